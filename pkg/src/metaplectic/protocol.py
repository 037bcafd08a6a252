"""State-vector simulation of the measurement-assisted sign-flip protocol.

A :class:`ProtocolState` is a register of qudits with a seeded RNG.  It
supports unitary application, standard-basis measurement of one qudit,
and coherent projection of one qudit onto a subspace (the unmeasured
branch keeps its relative phases).

The Flip construction works on qutrits: an ancilla
|psi> = (|0> - |1> + |2>)/sqrt(3) is prepared measurement-assisted, and
each round applies SUM to (data, ancilla) and measures the ancilla.  The
three outcomes flip the sign of one data amplitude each, with probability
exactly 1/3 per outcome, so the accumulated sign patterns walk the Klein
four-group {identity, Flip[0], Flip[1], Flip[2]} modulo a global sign.
The walk absorbs at Flip[2] (up to global sign) with probability
p_n = 1 - (2/3)^n after n rounds; :func:`exact_flip_curve` reproduces
that closed form from the quotient chain in exact rational arithmetic and
:func:`estimate_flip_success` estimates it by seeded Monte Carlo.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gates import hadamard, sum_gate

__all__ = [
    "ProtocolState",
    "prepare_flip_ancilla",
    "run_flip_round",
    "FlipCurveRow",
    "exact_flip_curve",
    "exact_flip_probability",
    "estimate_flip_success",
    "FLIP_PATTERNS",
]


class ProtocolState:
    """Amplitude vector over (C^d)^{x m} with a deterministic RNG."""

    def __init__(self, num_qudits, d, rng=None, seed=None, initial=None):
        self.d = int(d)
        self.m = int(num_qudits)
        self.amps = np.zeros((self.d,) * self.m, dtype=complex)
        self.amps[tuple(initial) if initial is not None else (0,) * self.m] = 1.0
        if rng is None:
            rng = np.random.default_rng(seed)
        self.rng = rng

    @classmethod
    def from_vector(cls, vec, d, rng=None, seed=None):
        vec = np.asarray(vec, dtype=complex)
        m = int(round(np.log(vec.size) / np.log(d)))
        if d ** m != vec.size:
            raise ValueError(f"vector of size {vec.size} is not a {d}-qudit register")
        state = cls(m, d, rng=rng, seed=seed)
        state.amps = (vec / np.linalg.norm(vec)).reshape((d,) * m)
        return state

    def vector(self):
        return self.amps.reshape(-1).copy()

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def apply(self, gate, at):
        """Apply a unitary on the qudits listed in ``at`` (control first)."""
        at = tuple(at)
        if any(not 0 <= q < self.m for q in at) or len(set(at)) != len(at):
            raise IndexError(f"bad qudit indices {at} for register of {self.m}")
        k = len(at)
        gate = np.asarray(gate, dtype=complex)
        if gate.shape != (self.d ** k, self.d ** k):
            raise ValueError(f"gate shape {gate.shape} does not act on {k} qudits")
        tensor = gate.reshape((self.d,) * (2 * k))
        rest = [ax for ax in range(self.m) if ax not in at]
        moved = np.transpose(self.amps, at + tuple(rest))
        out = np.tensordot(tensor, moved, axes=(tuple(range(k, 2 * k)), tuple(range(k))))
        inverse = np.argsort(at + tuple(rest))
        self.amps = np.transpose(out, inverse)
        return self

    def probabilities(self, qudit):
        axes = tuple(ax for ax in range(self.m) if ax != qudit)
        return np.abs(self.amps) ** 2 if not axes else (np.abs(self.amps) ** 2).sum(axis=axes)

    def measure_standard(self, qudit):
        """Born-rule measurement of one qudit; collapses and renormalizes."""
        probs = self.probabilities(qudit)
        outcome = int(self.rng.choice(self.d, p=probs / probs.sum()))
        keep = np.zeros(self.d)
        keep[outcome] = 1.0
        self._collapse(qudit, np.diag(keep))
        return outcome, float(probs[outcome])

    def project(self, qudit, vectors):
        """Coherent projection of one qudit onto span(vectors).

        Returns ("in"/"out", probability of the sampled branch).  The
        complement branch stays coherent: only the projector is applied.

        This is also the register-level reading of an anyonic total-charge
        measurement: measuring whether the first anyon pair of a
        fusion-tree qutrit is trivial projects onto span{|1>} (the |1 Y>
        basis vector) versus its complement, coherently.
        """
        basis = np.array([np.asarray(v, complex) / np.linalg.norm(v) for v in vectors]).T
        overlap = basis.conj().T @ basis
        if abs(overlap - np.eye(basis.shape[1])).max() > 1e-9:
            raise ValueError("projection subspace vectors must be orthonormal")
        proj = basis @ basis.conj().T
        moved = np.moveaxis(self.amps, qudit, 0).reshape(self.d, -1)
        p_in = float((np.abs(proj @ moved) ** 2).sum())
        p_in = min(max(p_in, 0.0), 1.0)
        inside = self.rng.random() < p_in
        self._collapse(qudit, proj if inside else np.eye(self.d) - proj)
        return ("in" if inside else "out"), (p_in if inside else 1.0 - p_in)

    def _collapse(self, qudit, operator):
        moved = np.moveaxis(self.amps, qudit, 0)
        moved = np.tensordot(operator, moved, axes=(1, 0))
        self.amps = np.moveaxis(moved, 0, qudit)
        norm = np.linalg.norm(self.amps)
        if norm < 1e-12:
            raise RuntimeError("collapsed onto a zero-probability branch")
        self.amps /= norm


# ---------------------------------------------------------------------------
# Flip construction

_OMEGA = np.exp(2j * np.pi / 3)

# ancilla-measurement outcome -> sign pattern applied to the data qutrit
FLIP_PATTERNS = {0: (1, 1, -1), 1: (-1, 1, 1), 2: (1, -1, 1)}

_TARGET_PATTERNS = ((1, 1, -1), (-1, -1, 1))  # Flip[2] up to a global sign


def prepare_flip_ancilla(rng):
    """Measurement-assisted preparation of (|0> - |1> + |2>)/sqrt(3).

    Starts from H|1> (x) H|2>, projects both qutrits onto span{|0>,|1>},
    applies SUM, and projects the first qutrit onto span{H|0>}; any failed
    projection restarts the preparation.  Returns (ancilla vector,
    attempts used); attempts are geometric with success chance 4/9 * 1/4.
    """
    h3 = hadamard(3)
    e0, e1 = np.eye(3)[0], np.eye(3)[1]
    attempts = 0
    while True:
        attempts += 1
        state = ProtocolState(2, 3, rng=rng, initial=(1, 2))
        state.apply(np.kron(h3, h3), (0, 1))
        if state.project(0, [e0, e1])[0] != "in":
            continue
        if state.project(1, [e0, e1])[0] != "in":
            continue
        state.apply(sum_gate(3), (0, 1))
        if state.project(0, [h3[:, 0]])[0] != "in":
            continue
        marginal = np.tensordot(h3[:, 0].conj(), state.amps, axes=(0, 0))
        return marginal / np.linalg.norm(marginal), attempts


def run_flip_round(phi, psi, rng):
    """One probabilistic sign-flip round on the data qutrit ``phi``.

    Applies SUM to (data, ancilla) and measures the ancilla; each outcome
    has probability exactly 1/3.  Returns (sign pattern applied,
    collapsed data state).
    """
    state = ProtocolState.from_vector(np.kron(np.asarray(phi, complex), psi), 3, rng=rng)
    state.apply(sum_gate(3), (0, 1))
    outcome, _ = state.measure_standard(1)
    marginal = state.amps[:, outcome]
    return FLIP_PATTERNS[outcome], marginal / np.linalg.norm(marginal)


def _pattern_class(pattern):
    """Quotient by the global sign: canonical representative."""
    return pattern if pattern[0] > 0 else tuple(-s for s in pattern)


def exact_flip_probability(n):
    """p_n = 1 - (2/3)^n as an exact Fraction."""
    return 1 - Fraction(2, 3) ** n


def exact_flip_curve(n_max):
    """Absorption probabilities of the 4-state quotient chain, exactly.

    States are the Klein four-group of sign patterns modulo global sign;
    each round multiplies by one of the three flip classes with
    probability 1/3, absorbing at the Flip[2] class.
    """
    classes = [(1, 1, 1), (1, -1, -1), (1, -1, 1), (1, 1, -1)]
    index = {c: i for i, c in enumerate(classes)}
    absorbing = index[(1, 1, -1)]
    third = Fraction(1, 3)
    dist = [Fraction(0)] * 4
    dist[index[(1, 1, 1)]] = Fraction(1)
    absorbed = Fraction(0)
    curve = []
    for _ in range(n_max):
        new = [Fraction(0)] * 4
        for i, cls in enumerate(classes):
            if dist[i] == 0:
                continue
            for step in FLIP_PATTERNS.values():
                product = _pattern_class(tuple(a * b for a, b in zip(cls, step)))
                new[index[product]] += third * dist[i]
        absorbed += new[absorbing]
        new[absorbing] = Fraction(0)
        dist = new
        curve.append(absorbed)
    return curve


@dataclass
class FlipCurveRow:
    n: int
    p_hat: float
    p_exact: float
    stderr: float


def estimate_flip_success(trials, n_max, seed):
    """Monte Carlo estimate of the Flip[2] success curve.

    Runs ``trials`` independent protocol executions (each round simulated
    at the state-vector level with a fresh copy of the exact ancilla);
    success at round n means the accumulated sign pattern equals Flip[2]
    up to a global sign.  Returns one row per n with the empirical
    cumulative success rate and its binomial standard error.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    psi = np.array([1, -1, 1], dtype=complex) / np.sqrt(3)
    # shifted[i, j] is the ancilla amplitude at outcome j after SUM when
    # the data qutrit is |i>; one round maps phi -> phi * shifted[:, j].
    shifted = np.array([[psi[(j - i) % 3] for j in range(3)] for i in range(3)])
    round_patterns = np.sign(shifted.real.T).astype(np.int8)  # row j: outcome-j pattern
    phi = np.tile(np.array([1, 1, 1], dtype=complex) / np.sqrt(3), (trials, 1))
    accumulated = np.ones((trials, 3), dtype=np.int8)
    alive = np.ones(trials, dtype=bool)
    successes = np.zeros(n_max, dtype=np.int64)
    done = 0
    for round_index in range(n_max):
        idx = np.nonzero(alive)[0]
        if idx.size == 0:
            successes[round_index:] = done
            break
        amps = phi[idx, :, None] * shifted[None, :, :]
        probs = (np.abs(amps) ** 2).sum(axis=1)
        draws = rng.random(idx.size)
        outcomes = np.minimum((draws[:, None] >= np.cumsum(probs, axis=1)).sum(axis=1), 2)
        rows_sel = np.arange(idx.size)
        phi[idx] = amps[rows_sel, :, outcomes] / np.sqrt(probs[rows_sel, outcomes])[:, None]
        accumulated[idx] *= round_patterns[outcomes]
        acc = accumulated[idx]
        # success: accumulated pattern is Flip[2] up to a global sign
        success = (acc[:, 0] == acc[:, 1]) & (acc[:, 2] == -acc[:, 0])
        done += int(success.sum())
        alive[idx[success]] = False
        successes[round_index] = done
    rows = []
    for n in range(1, n_max + 1):
        p_hat = successes[n - 1] / trials
        stderr = np.sqrt(max(p_hat * (1 - p_hat), 1e-300) / trials)
        rows.append(FlipCurveRow(n, float(p_hat), float(exact_flip_probability(n)), float(stderr)))
    return rows
