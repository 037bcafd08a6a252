"""Braiding simulator and verification engine for metaplectic anyons.

Encodes the SU(2)_4 and SO(5)_2 modular-category data, compiles braid
words into unitaries on fusion-tree bases, and mechanically checks the
gate identities, group images, density witnesses and the probabilistic
sign-flip protocol of the associated qutrit/qupit computing schemes.
"""

from .categories import (Category, CategoryError, CategoryFileError,
                         InadmissibleError, MissingDataError, UnknownLabelError,
                         builtin_category, check_consistency, parse_category,
                         serialize_category)
from .braidrep import BraidRep, general_generators, pair_tree_generators, rep_check
from .gates import GateSpec, equal_up_to_phase, make_gate, parse_gate
from .protocol import (ProtocolState, estimate_flip_success, exact_flip_curve,
                       exact_flip_probability, prepare_flip_ancilla, run_flip_round)
from .synthesis import (BraidWord, eval_word, group_closure, named_words,
                        verify_identity, word_from_text)
from .trees import (FusionTreeBasis, TreeShape, block_embedding, enumerate_basis,
                    parse_shape, tree_change)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
