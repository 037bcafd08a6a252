"""Braid words, gate-identity verification, and finite group closure.

A braid word is a sequence of nonzero signed integers; ``+i``/``-i`` mean
the generator sigma_i and its inverse.  ``eval_word`` multiplies the
generator matrices in the written order, i.e. the word ``1 2 1`` maps to
the matrix product sigma_1 sigma_2 sigma_1 (the rightmost letter acts
first on state vectors).  This is the reading under which the braid words
for the multiplication gates M[k] reproduce |i> -> |k i> rather than the
transposed permutations.

``group_closure`` runs a deterministic breadth-first closure under
multiplication, either projectively (elements hashed with their global
phase normalized away) or linearly after rescaling each generator to
determinant one with the principal root.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import equal_up_to_phase, phase_distance

__all__ = [
    "BraidWord", "word_from_text", "eval_word", "named_words",
    "VerifyResult", "verify_identity",
    "ClosureResult", "group_closure", "det_normalize", "phase_canonical",
]


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_{n_strands}."""

    n_strands: int
    letters: tuple

    def __post_init__(self):
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.n_strands - 1:
                raise ValueError(f"letter {letter} invalid for {self.n_strands} strands")

    def inverse(self):
        return BraidWord(self.n_strands, tuple(-l for l in reversed(self.letters)))

    def __mul__(self, other):
        if self.n_strands != other.n_strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.n_strands, self.letters * k)

    def __str__(self):
        return " ".join(str(l) for l in self.letters)


def word_from_text(text, n_strands):
    """Parse whitespace-separated signed generator indices."""
    letters = tuple(int(tok) for tok in text.split())
    return BraidWord(n_strands, letters)


def _su2_4_words():
    # p and q are fixed by the matrices they must produce: p^2 swaps
    # |0>,|1> and q^2 swaps |0>,|2> (each times -1) on the qutrit basis.
    p = BraidWord(4, (3, 2, 3))
    q = BraidWord(4, (1, 2, 1))
    s1 = BraidWord(8, (2, 1, 3, 2))
    s2 = BraidWord(8, (4, 3, 5, 4))
    s3 = BraidWord(8, (6, 5, 7, 6))
    return {
        "p": p,
        "q": q,
        "Hword": q * q * p * q * q,
        "s1": s1,
        "s2": s2,
        "s3": s3,
        "CZword": s1.inverse() * s2 * s2 * s1 * s3.inverse() * s2 * s2 * s3,
    }


_NAMED = {"su2_4": _su2_4_words()}


def named_words(category_name):
    """Preregistered words (p, q, Hword, CZword, s1, s2, s3) per category."""
    return dict(_NAMED.get(category_name, {}))


def eval_word(rep, word):
    """Product of generator matrices in written order; inverse letters use
    the conjugate transpose.  The empty word is the identity."""
    if word.n_strands != rep.n_strands:
        raise ValueError(f"word is on {word.n_strands} strands, rep on {rep.n_strands}")
    out = np.eye(rep.dim, dtype=complex)
    for letter in word.letters:
        gen = rep.generators[abs(letter) - 1]
        out = out @ (gen if letter > 0 else gen.conj().T)
    return out


@dataclass
class VerifyResult:
    passed: bool
    phase: complex
    residual: float
    leakage: float


def verify_identity(rep, word, target, subspace=None, tol=1e-8):
    """Check a braid word against a target gate up to a global phase.

    With ``subspace`` (an isometry E of shape dim x k) the comparison is
    E^dag U E against the k x k target, and the leakage norm
    max|(I - E E^dag) U E| is reported as well.
    """
    u = eval_word(rep, word)
    target = np.asarray(target, dtype=complex)
    if subspace is not None:
        e = np.asarray(subspace, dtype=complex)
        if e.shape[0] != rep.dim or e.shape[1] != target.shape[0]:
            raise ValueError("subspace/target dimensions do not match the rep")
        ue = u @ e
        restricted = e.conj().T @ ue
        leakage = abs(ue - e @ restricted).max()
    else:
        if target.shape[0] != rep.dim:
            raise ValueError("target dimension does not match the rep")
        restricted = u
        leakage = 0.0
    residual, phase = phase_distance(restricted, target)
    return VerifyResult(residual < tol and leakage < tol, phase, residual, leakage)


# ---------------------------------------------------------------------------
# finite group closure


def phase_canonical(u):
    """Rotate the global phase so the max-modulus entry with smallest
    (row, col) becomes positive real; fixed point of phase multiplication."""
    mags = np.abs(u)
    top = mags.max()
    idx = next(zip(*np.nonzero(mags >= top - 1e-9)))
    entry = u[idx]
    return u * (abs(entry) / entry)


def det_normalize(u):
    """Rescale to determinant one using the principal root of det."""
    u = np.asarray(u, dtype=complex)
    det = np.linalg.det(u)
    return u / det ** (1.0 / u.shape[0])


@dataclass
class ClosureResult:
    order: object  # int, or None when the cap was exceeded
    cap_exceeded: bool
    center_size: object
    element_orders: object  # {element order: count}, or None

    def histogram_text(self):
        if self.element_orders is None:
            return ""
        return " ".join(f"{k}:{v}" for k, v in sorted(self.element_orders.items()))


def _key(u, grid=1e-6):
    q = np.round(u / grid)
    return (q.real.astype(np.int64).tobytes(), q.imag.astype(np.int64).tobytes())


def group_closure(generators, projective=False, cap=100000, det_lift=True):
    """Breadth-first closure of a set of unitaries under multiplication.

    ``projective=True`` identifies matrices up to a global phase;
    otherwise each generator is first rescaled to determinant one (the
    resulting order then depends on that lift, which is the convention
    reported here).  Pass ``det_lift=False`` to close the literal
    matrices instead, e.g. for permutation gates of determinant -1, where
    the principal-root rescale would introduce spurious phases.  Returns
    order, center size, and a histogram of element orders; if more than
    ``cap`` distinct elements appear, the search stops with
    ``cap_exceeded`` set and no order claim.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].shape[0]
    if any(g.shape != (dim, dim) for g in gens):
        raise ValueError("generators must share one dimension")
    if not projective and det_lift:
        gens = [det_normalize(g) for g in gens]
    canon = phase_canonical if projective else (lambda u: u)

    identity = canon(np.eye(dim, dtype=complex))
    elements = {_key(identity): identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for cur in frontier:
            for gen in gens:
                new = canon(cur @ gen)
                key = _key(new)
                known = elements.get(key)
                if known is None:
                    if len(elements) >= cap:
                        return ClosureResult(None, True, None, None)
                    elements[key] = new
                    next_frontier.append(new)
                elif abs(known - new).max() > 1e-4:
                    raise RuntimeError("hash grid collision between distinct elements")
        frontier = next_frontier

    members = list(elements.values())
    same = (lambda a, b: equal_up_to_phase(a, b, 1e-8)[0]) if projective \
        else (lambda a, b: abs(a - b).max() < 1e-8)
    center = sum(1 for el in members if all(same(el @ g, g @ el) for g in gens))
    eye = np.eye(dim, dtype=complex)
    histogram = {}
    for el in members:
        power = el
        order = 1
        while not same(power, eye):
            power = power @ el
            order += 1
            if order > len(members):
                raise RuntimeError("element order exceeds group order; inconsistent closure")
        histogram[order] = histogram.get(order, 0) + 1
    return ClosureResult(len(members), False, center, histogram)
