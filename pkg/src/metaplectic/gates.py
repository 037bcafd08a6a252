"""Exact constructors for the qudit gate set, and up-to-phase comparison.

Computational basis is indexed 0..d-1; for two-qudit gates the first
factor is the control/left qudit and |i,j> has flat index i*d + j.

Gates (omega = exp(2 pi i / d)):
    H[d]      |j>   -> (1/sqrt d) sum_i omega^{ij} |i>
    SUM[d]    |i,j> -> |i, i+j mod d>
    Q[i,d]    |j>   -> omega^{delta_ij} |j>
    P[i,d]    |j>   -> (-omega^2)^{delta_ij} |j>
    X[d]      |i>   -> |i+1 mod d>
    Z[d]      |i>   -> omega^i |i>
    CZ[d]     |i,j> -> omega^{ij} |i,j>
    FLIP[i,d] |j>   -> (-1)^{delta_ij} |j>
    M[k,d]    |i>   -> |k i mod d>        (requires gcd(k, d) = 1)
    R[i,j,k,d] = (Q[i] Q[j]^-1)^k          (requires i != j)
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GateSpec", "omega", "hadamard", "sum_gate", "q_gate", "p_gate",
    "x_gate", "z_gate", "cz_gate", "flip_gate", "mult_gate", "relative_phase_gate",
    "make_gate", "parse_gate", "phase_distance", "equal_up_to_phase",
]


def omega(d):
    return cmath.exp(2j * math.pi / d)


def hadamard(d):
    w = omega(d)
    mat = np.array([[w ** (i * j) for j in range(d)] for i in range(d)], dtype=complex)
    return mat / math.sqrt(d)


def sum_gate(d):
    mat = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            mat[i * d + (i + j) % d, i * d + j] = 1.0
    return mat


def q_gate(d, i):
    _check_index(d, i)
    diag = np.ones(d, dtype=complex)
    diag[i] = omega(d)
    return np.diag(diag)


def p_gate(d, i):
    _check_index(d, i)
    diag = np.ones(d, dtype=complex)
    diag[i] = -omega(d) ** 2
    return np.diag(diag)


def x_gate(d):
    mat = np.zeros((d, d), dtype=complex)
    for i in range(d):
        mat[(i + 1) % d, i] = 1.0
    return mat


def z_gate(d):
    return np.diag(np.array([omega(d) ** i for i in range(d)], dtype=complex))


def cz_gate(d):
    diag = np.array([omega(d) ** (i * j) for i in range(d) for j in range(d)], dtype=complex)
    return np.diag(diag)


def flip_gate(d, i):
    _check_index(d, i)
    diag = np.ones(d, dtype=complex)
    diag[i] = -1.0
    return np.diag(diag)


def mult_gate(d, k):
    if math.gcd(k, d) != 1:
        raise ValueError(f"multiplication gate needs gcd(k,d)=1, got k={k}, d={d}")
    mat = np.zeros((d, d), dtype=complex)
    for i in range(d):
        mat[(k * i) % d, i] = 1.0
    return mat


def relative_phase_gate(d, i, j, k=1):
    """R[i,j,k] = (Q[i] Q[j]^-1)^k: opposite phases on levels i and j."""
    if i == j:
        raise ValueError("relative phase gate needs i != j")
    _check_index(d, i)
    _check_index(d, j)
    diag = np.ones(d, dtype=complex)
    diag[i] = omega(d) ** k
    diag[j] = omega(d) ** (-k)
    return np.diag(diag)


def _check_index(d, i):
    if not 0 <= i < d:
        raise ValueError(f"index {i} out of range for dimension {d}")


@dataclass(frozen=True)
class GateSpec:
    """Symbolic gate: kind, qudit dimension, and integer parameters."""

    kind: str
    d: int
    params: tuple = ()


_MAKERS = {
    "H": lambda d: hadamard(d),
    "SUM": lambda d: sum_gate(d),
    "Q": lambda d, i: q_gate(d, i),
    "P": lambda d, i: p_gate(d, i),
    "X": lambda d: x_gate(d),
    "Z": lambda d: z_gate(d),
    "CZ": lambda d: cz_gate(d),
    "FLIP": lambda d, i: flip_gate(d, i),
    "M": lambda d, k: mult_gate(d, k),
    "R": lambda d, i, j, k: relative_phase_gate(d, i, j, k),
}


def make_gate(spec):
    if spec.kind not in _MAKERS:
        raise ValueError(f"unknown gate kind {spec.kind!r}")
    if spec.d < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {spec.d}")
    return _MAKERS[spec.kind](spec.d, *spec.params)


_GATE_RE = re.compile(r"^([A-Z]+)(\d+)(?:\[([0-9,\s]+)\])?$")


def parse_gate(text):
    """Parse names like H3, SUM3, Q3[1], FLIP3[2], M5[2], R5[1,2,3]."""
    m = _GATE_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse gate name {text!r}")
    kind, d, args = m.group(1), int(m.group(2)), m.group(3)
    params = tuple(int(x) for x in args.split(",")) if args else ()
    spec = GateSpec(kind, d, params)
    make_gate(spec)  # validate eagerly
    return spec


# ---------------------------------------------------------------------------
# up-to-phase comparison


def phase_distance(u, v):
    """(residual, theta): the max-entry deviation of u from theta*v, with
    theta the unit phase read off the max-modulus entry of v (smallest
    (row, col) among ties within 1e-9)."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    mags = np.abs(v)
    top = mags.max()
    idx = next(zip(*np.nonzero(mags >= top - 1e-9)))
    theta = u[idx] / v[idx]
    if abs(theta) > 1e-30:
        theta /= abs(theta)
    return abs(u - theta * v).max(), theta


def equal_up_to_phase(u, v, tol=1e-8):
    """True (with the matching phase) iff u = theta*v entrywise within tol."""
    residual, theta = phase_distance(u, v)
    return residual < tol, theta
