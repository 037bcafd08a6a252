"""Fusion-tree bases and F-move basis changes.

A tree shape is a full binary tree over ordered, labeled leaves with a
fixed total charge at the root.  A basis state assigns an admissible
charge to every internal edge; the assignment is recorded as a tuple of
labels over the internal nodes in preorder (root excluded, since its
charge is the total).

Basis changes between shapes are composed from elementary rotations
``((X Y) Z) <-> (X (Y Z))`` whose coefficients are F-matrix entries; any
two shapes are connected through the left comb, which makes move paths
deterministic and results bit-reproducible.

Computational bases for the shipped qudit models carry a fixed state
order and per-state signs (the qutrit basis is {-|YY>, |1Y>, |Y1>}); all
other bases are ordered lexicographically in the category's label order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .categories import InadmissibleError

__all__ = [
    "TreeShape",
    "FusionTreeBasis",
    "pair_tree",
    "comb_tree",
    "fork_tree",
    "block_comb_tree",
    "enumerate_basis",
    "tree_change",
    "block_embedding",
    "parse_shape",
    "format_shape",
]


@dataclass(frozen=True)
class TreeShape:
    """A rooted full binary tree: nested pairs of leaf slots, the leaf
    labels, and the total (root) charge."""

    structure: object  # int leaf slot, or 2-tuple of substructures
    leaves: tuple
    total: str

    def __post_init__(self):
        slots = _leaf_slots(self.structure)
        if slots != tuple(range(len(self.leaves))):
            raise ValueError(f"structure slots {slots} do not match {len(self.leaves)} leaves")
        if len(self.leaves) < 2:
            raise ValueError("a fusion tree needs at least 2 leaves")

    @property
    def n_leaves(self):
        return len(self.leaves)


def _leaf_slots(structure):
    if isinstance(structure, int):
        return (structure,)
    left, right = structure
    return _leaf_slots(left) + _leaf_slots(right)


def _internal_paths(structure, path=()):
    """Paths of internal nodes in preorder; () is the root."""
    if isinstance(structure, int):
        return []
    left, right = structure
    return [path] + _internal_paths(left, path + (0,)) + _internal_paths(right, path + (1,))


def _subtree(structure, path):
    for step in path:
        structure = structure[step]
    return structure


def _replace(structure, path, new):
    if not path:
        return new
    left, right = structure
    if path[0] == 0:
        return (_replace(left, path[1:], new), right)
    return (left, _replace(right, path[1:], new))


def _comb_structure(n):
    return reduce(lambda acc, i: (acc, i), range(1, n), 0)


def pair_tree(cat, leaf, total):
    """The 4-leaf shape ((a a)(a a)) -> total used by the 1-qudit models."""
    leaf = cat.resolve(leaf)
    return TreeShape(((0, 1), (2, 3)), (leaf,) * 4, cat.resolve(total))


def comb_tree(cat, leaves, total):
    """Left-nested comb (((l0 l1) l2) ...) -> total."""
    leaves = tuple(cat.resolve(l) for l in leaves)
    return TreeShape(_comb_structure(len(leaves)), leaves, cat.resolve(total))


def fork_tree(cat, leaves, total, i):
    """Left comb over 0..i-2, a fork on leaves (i-1, i), comb continues.

    This is the shape in which the braid generator sigma_i acts as a
    diagonal R twist on the fork charge.
    """
    n = len(leaves)
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    atoms = list(range(i - 1)) + [(i - 1, i)] + list(range(i + 1, n))
    structure = reduce(lambda acc, x: (acc, x), atoms[1:], atoms[0])
    leaves = tuple(cat.resolve(l) for l in leaves)
    return TreeShape(structure, leaves, cat.resolve(total))


def block_comb_tree(cat, leaf, n_blocks, total):
    """Left comb of ``n_blocks`` pair-tree blocks of four ``leaf`` anyons."""
    blocks = [((4 * k, 4 * k + 1), (4 * k + 2, 4 * k + 3)) for k in range(n_blocks)]
    structure = reduce(lambda acc, x: (acc, x), blocks[1:], blocks[0])
    leaf = cat.resolve(leaf)
    return TreeShape(structure, (leaf,) * (4 * n_blocks), cat.resolve(total))


@dataclass(frozen=True)
class FusionTreeBasis:
    """Ordered admissible labelings of a tree shape, with per-state signs
    identifying computational basis vectors (state i is signs[i] times the
    bare labeling)."""

    cat: object
    shape: TreeShape
    states: tuple  # tuple of labeling tuples (preorder internal nodes, root excluded)
    signs: tuple

    @property
    def dim(self):
        return len(self.states)

    def index(self, labeling):
        return self.states.index(tuple(labeling))


# Models whose printed basis order and signs are frozen verbatim.
_GOLDEN = {
    ("su2_4", ((0, 1), (2, 3)), ("1",) * 4, "2"):
        ((("2", "2"), ("0", "2"), ("2", "0")), (-1, 1, 1)),
    ("su2_4", ((0, 1), (2, 3)), ("1",) * 4, "0"):
        ((("0", "0"), ("2", "2")), (1, 1)),
    ("so5_2", ((0, 1), (2, 3)), ("eps",) * 4, "y1"):
        ((("y2", "y2"), ("1", "y1"), ("y2", "y1"), ("y1", "y2"), ("y1", "1")),
         (1, 1, 1, 1, 1)),
}


def enumerate_basis(cat, shape, total=None):
    """All admissible labelings of ``shape`` (empty basis allowed).

    States are sorted lexicographically in the category's label order,
    except for the registered computational bases, whose printed order and
    signs are kept.
    """
    if total is not None and cat.resolve(total) != shape.total:
        shape = TreeShape(shape.structure, shape.leaves, cat.resolve(total))

    def rec(structure, charge):
        # labelings of the subtree, each including the subtree root charge first
        if isinstance(structure, int):
            return [()] if shape.leaves[structure] == charge else []
        left, right = structure
        out = []
        for cl in _charges(structure[0]):
            for cr in _charges(structure[1]):
                if charge not in cat.fuse(cl, cr):
                    continue
                for tl in rec(left, cl):
                    for tr in rec(right, cr):
                        out.append(_tag(left, cl, tl) + _tag(right, cr, tr))
        return out

    def _charges(structure):
        if isinstance(structure, int):
            return (shape.leaves[structure],)
        return cat.labels

    def _tag(structure, charge, labeling):
        return labeling if isinstance(structure, int) else (charge,) + labeling

    states = rec(shape.structure, shape.total)
    states.sort(key=lambda t: tuple(cat.labels.index(x) for x in t))
    key = (cat.name, shape.structure, shape.leaves, shape.total)
    if key in _GOLDEN:
        golden_states, signs = _GOLDEN[key]
        if sorted(golden_states) != sorted(tuple(s) for s in states):
            raise AssertionError(f"golden basis mismatch for {key}")
        return FusionTreeBasis(cat, shape, golden_states, signs)
    return FusionTreeBasis(cat, shape, tuple(states), (1,) * len(states))


def _assignment(shape, labeling):
    """labeling tuple -> dict of path -> charge for every node."""
    charges = {}
    internal = _internal_paths(shape.structure)
    charges[()] = shape.total
    for path, label in zip(internal[1:], labeling):
        charges[path] = label
    for slot, path in _leaf_paths(shape.structure):
        charges[path] = shape.leaves[slot]
    return charges


def _leaf_paths(structure, path=()):
    if isinstance(structure, int):
        return [(structure, path)]
    left, right = structure
    return _leaf_paths(left, path + (0,)) + _leaf_paths(right, path + (1,))


def _labeling_of(structure, charges):
    internal = _internal_paths(structure)
    return tuple(charges[p] for p in internal[1:])


def _rotate_left_assignment(cat, charges, path):
    """Apply (X (Y Z)) -> ((X Y) Z) at ``path``; yields (new charges, coeff)."""
    w = charges[path]
    x = charges[path + (0,)]
    m = charges[path + (1,)]
    y = charges[path + (1, 0)]
    z = charges[path + (1, 1)]
    fmat = cat.f(x, y, z, w)
    rows = cat.f_rows(x, y, z, w)
    cols = cat.f_cols(x, y, z, w)
    mi = cols.index(m)
    x_moves = [(p, q) for p, q in charges.items()
               if p[:len(path) + 1] == path + (0,)]
    y_moves = [(p, q) for p, q in charges.items()
               if p[:len(path) + 2] == path + (1, 0)]
    z_moves = [(p, q) for p, q in charges.items()
               if p[:len(path) + 2] == path + (1, 1)]
    base = {p: q for p, q in charges.items()
            if not (p[:len(path) + 1] in (path + (0,), path + (1,)) and len(p) > len(path))}
    k = len(path)
    for p, q in x_moves:
        base[path + (0, 0) + p[k + 1:]] = q
    for p, q in y_moves:
        base[path + (0, 1) + p[k + 2:]] = q
    for p, q in z_moves:
        base[path + (1,) + p[k + 2:]] = q
    for ui, u in enumerate(rows):
        coeff = np.conj(fmat[ui, mi])  # inverse F-move entry
        if coeff == 0:
            continue
        new = dict(base)
        new[path + (0,)] = u
        yield new, coeff


def _to_comb(cat, basis):
    """Rewrite a basis into the left comb; returns (comb labelings in lex
    order, matrix taking basis coordinates to comb coordinates)."""
    structure = basis.shape.structure
    states = [(_assignment(basis.shape, lab), col)
              for col, lab in enumerate(basis.states)]
    matrix_cols = basis.dim
    amplitudes = {}
    for charges, col in states:
        key = frozenset(charges.items())
        vec = amplitudes.setdefault(key, np.zeros(matrix_cols, dtype=complex))
        vec[col] += 1.0

    def first_rotation(structure, path=()):
        if isinstance(structure, int):
            return None
        left, right = structure
        if not isinstance(right, int):
            return path
        return first_rotation(left, path + (0,))

    while True:
        path = first_rotation(structure)
        if path is None:
            break
        new_amplitudes = {}
        for key, vec in amplitudes.items():
            charges = dict(key)
            for new, coeff in _rotate_left_assignment(cat, charges, path):
                nk = frozenset(new.items())
                acc = new_amplitudes.setdefault(nk, np.zeros(matrix_cols, dtype=complex))
                acc += coeff * vec
        amplitudes = new_amplitudes
        node = _subtree(structure, path)
        x, (y, z) = node
        structure = _replace(structure, path, ((x, y), z))

    labelings = {}
    for key, vec in amplitudes.items():
        labelings[_labeling_of(structure, dict(key))] = vec
    order = sorted(labelings, key=lambda t: tuple(cat.labels.index(x) for x in t))
    mat = np.stack([labelings[lab] for lab in order]) if order else np.zeros((0, matrix_cols))
    return order, mat


def tree_change(cat, basis_from, basis_to):
    """Unitary basis change between two shapes over the same leaves and
    total charge, composed from F-moves through the left comb.

    Signs of both computational bases are folded in, so coordinates map
    to coordinates.  Raises ``MissingDataError`` if a required F-entry is
    absent and ``InadmissibleError`` on mismatched leaves or total.
    """
    if basis_from.shape.leaves != basis_to.shape.leaves:
        raise InadmissibleError("tree_change: leaf labels differ")
    if basis_from.shape.total != basis_to.shape.total:
        raise InadmissibleError("tree_change: total charges differ")
    order_f, mat_f = _to_comb(cat, basis_from)
    order_t, mat_t = _to_comb(cat, basis_to)
    if order_f != order_t:
        raise AssertionError("comb bases disagree; inconsistent inputs")
    raw = mat_t.conj().T @ mat_f
    s_from = np.asarray(basis_from.signs, dtype=float)
    s_to = np.asarray(basis_to.signs, dtype=float)
    return s_to[:, None] * raw * s_from[None, :]


def block_embedding(cat, leaf, block_total, n_blocks, total):
    """Isometry embedding the product of per-block computational bases
    into the full fusion-tree basis.

    Each block is a pair tree of four ``leaf`` anyons whose root edge
    carries ``block_total``.  Columns are indexed in row-major order over
    block states (first block slowest); entries are 0 or +-1.
    Supports 1 or 2 blocks (beyond that the block roots no longer pin all
    internal charges).
    """
    block_shape = pair_tree(cat, leaf, block_total)
    block_basis = enumerate_basis(cat, block_shape)
    if block_basis.dim == 0:
        raise InadmissibleError("block basis is empty")
    if n_blocks == 1:
        if cat.resolve(total) != cat.resolve(block_total):
            raise InadmissibleError("single block: total must equal block charge")
        return np.eye(block_basis.dim, dtype=complex), block_basis, block_basis
    if n_blocks != 2:
        raise ValueError("block_embedding supports 1 or 2 blocks")
    full_shape = block_comb_tree(cat, leaf, n_blocks, total)
    full_basis = enumerate_basis(cat, full_shape)
    bt = cat.resolve(block_total)
    if cat.resolve(total) not in cat.fuse(bt, bt):
        raise InadmissibleError("block charges cannot fuse to the requested total")
    d = block_basis.dim
    mat = np.zeros((full_basis.dim, d * d), dtype=complex)
    for i, (lab_i, sign_i) in enumerate(zip(block_basis.states, block_basis.signs)):
        for j, (lab_j, sign_j) in enumerate(zip(block_basis.states, block_basis.signs)):
            labeling = (bt,) + tuple(lab_i) + (bt,) + tuple(lab_j)
            row = full_basis.index(labeling)
            mat[row, i * d + j] = sign_i * sign_j
    return mat, full_basis, block_basis


# ---------------------------------------------------------------------------
# text form, e.g. "((eps eps)(eps eps))->y"


def parse_shape(cat, text):
    """Parse a nested-parenthesis tree with leaf labels and total charge."""
    if "->" not in text:
        raise ValueError("shape text needs a '->' total charge")
    tree_text, total = text.rsplit("->", 1)
    tokens = tree_text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0
    leaves = []

    def parse_node():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of shape text")
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            left = parse_node()
            right = parse_node()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("expected ')' in shape text")
            pos += 1
            return (left, right)
        if tok == ")":
            raise ValueError("unexpected ')' in shape text")
        pos += 1
        leaves.append(cat.resolve(tok))
        return len(leaves) - 1

    structure = parse_node()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in shape text: {tokens[pos:]}")
    return TreeShape(structure, tuple(leaves), cat.resolve(total.strip()))


def format_shape(shape):
    def fmt(structure):
        if isinstance(structure, int):
            return shape.leaves[structure]
        return "(" + " ".join(fmt(child) for child in structure) + ")"

    return f"{fmt(shape.structure)}->{shape.total}"
