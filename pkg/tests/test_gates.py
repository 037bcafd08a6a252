"""Qudit gate constructors and the up-to-phase comparison."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic.gates import (GateSpec, cz_gate, equal_up_to_phase, flip_gate,
                               hadamard, make_gate, mult_gate, omega, p_gate,
                               parse_gate, phase_distance, q_gate,
                               relative_phase_gate, sum_gate, x_gate, z_gate)


def test_hadamard_on_zero():
    out = hadamard(3) @ np.array([1, 0, 0])
    assert abs(out - np.ones(3) / math.sqrt(3)).max() < 1e-15


def test_sum_gate_example():
    state = np.zeros(9)
    state[1 * 3 + 2] = 1.0  # |1,2>
    out = sum_gate(3) @ state
    assert out[1 * 3 + 0] == 1.0  # |1,0>
    assert np.abs(out).sum() == 1.0


def test_p_gate_example():
    p1 = p_gate(3, 1)
    assert p1[1, 1] == pytest.approx(-omega(3) ** 2)
    assert p1[0, 0] == 1.0


def test_mult_gate_example():
    state = np.zeros(5)
    state[3] = 1.0
    out = mult_gate(5, 2) @ state
    assert out[1] == 1.0  # 2*3 mod 5


def test_x_z_definitions():
    assert (x_gate(3) @ np.eye(3)[2])[0] == 1.0
    assert z_gate(5)[2, 2] == pytest.approx(omega(5) ** 2)
    assert cz_gate(3)[4, 4] == pytest.approx(omega(3))  # |1,1>


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_hadamard_unitary(d):
    h = hadamard(d)
    assert abs(h.conj().T @ h - np.eye(d)).max() < 1e-12


def test_h3_squared_swaps_one_two():
    swap = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
    h2 = hadamard(3) @ hadamard(3)
    assert abs(h2 - swap).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_q_gate_product_is_omega_identity(d):
    prod = np.eye(d, dtype=complex)
    for i in range(d):
        prod = prod @ q_gate(d, i)
    assert abs(prod - omega(d) * np.eye(d)).max() < 1e-12


def test_z3_from_q_gates():
    z_built = q_gate(3, 1) @ np.linalg.matrix_power(q_gate(3, 2), 2)
    assert abs(z_built - z_gate(3)).max() < 1e-12


def test_x3_from_hadamard_conjugation():
    h = hadamard(3)
    built = h.conj().T @ z_gate(3) @ h
    assert abs(built - x_gate(3)).max() < 1e-12


@pytest.mark.parametrize("i", [0, 1, 2])
def test_p_squared_is_q(i):
    # (-w^2)^2 = w^4 = w, so P[i] is a square root of Q[i]
    assert abs(p_gate(3, i) @ p_gate(3, i) - q_gate(3, i)).max() < 1e-12


def test_p2_factors_through_flip():
    built = q_gate(3, 2) @ q_gate(3, 2) @ flip_gate(3, 2)
    assert abs(p_gate(3, 2) - built).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5])
def test_sum_from_cz_and_hadamard(d):
    h = hadamard(d)
    eye = np.eye(d)
    built = np.kron(eye, h) @ cz_gate(d).conj().T @ np.kron(eye, h.conj().T)
    assert abs(built - sum_gate(d)).max() < 1e-12


def test_parameter_validation():
    with pytest.raises(ValueError):
        q_gate(3, 3)
    with pytest.raises(ValueError):
        mult_gate(6, 2)  # gcd != 1
    with pytest.raises(ValueError):
        relative_phase_gate(5, 2, 2)
    with pytest.raises(ValueError):
        make_gate(GateSpec("H", 1))
    with pytest.raises(ValueError):
        make_gate(GateSpec("WAT", 3))


def test_parse_gate_names():
    assert parse_gate("H3") == GateSpec("H", 3)
    assert parse_gate("Q3[1]") == GateSpec("Q", 3, (1,))
    assert parse_gate("FLIP3[2]") == GateSpec("FLIP", 3, (2,))
    assert parse_gate("M5[2]") == GateSpec("M", 5, (2,))
    assert parse_gate("R5[1,2,3]") == GateSpec("R", 5, (1, 2, 3))
    with pytest.raises(ValueError):
        parse_gate("H")
    with pytest.raises(ValueError):
        parse_gate("M6[2]")


def test_equal_up_to_phase_scalar_case():
    gamma = cmath.exp(1j * 0.7)
    ok, theta = equal_up_to_phase(gamma * np.eye(4), np.eye(4))
    assert ok and abs(theta - gamma) < 1e-12


def test_equal_up_to_phase_rejects_nonproportional():
    h = hadamard(3)
    ok, _ = equal_up_to_phase(h, h @ np.diag([1, 1, -1]), tol=1e-6)
    assert not ok


def test_phase_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        phase_distance(np.eye(2), np.eye(3))


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-math.pi, max_value=math.pi), st.integers(min_value=0, max_value=10 ** 6))
def test_equal_up_to_phase_recovers_phase(angle, seed):
    rng = np.random.default_rng(seed)
    mat = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    u = np.linalg.qr(mat)[0]
    theta = cmath.exp(1j * angle)
    ok, found = equal_up_to_phase(theta * u, u, tol=1e-8)
    assert ok and abs(found - theta) < 1e-8


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(["H", "Q0", "Q1", "X", "Z", "P2"]), min_size=1, max_size=8))
def test_gate_products_stay_unitary(word):
    table = {"H": hadamard(3), "Q0": q_gate(3, 0), "Q1": q_gate(3, 1),
             "X": x_gate(3), "Z": z_gate(3), "P2": p_gate(3, 2)}
    out = np.eye(3, dtype=complex)
    for name in word:
        out = out @ table[name]
    assert abs(out.conj().T @ out - np.eye(3)).max() < 1e-10
