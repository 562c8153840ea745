import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcopy.operators import (
    basis_index,
    frobenius_distance,
    hermitian_eig,
    hermiticity_residual,
    propagator,
    unitarity_residual,
)
from qcopy.synthesis import (
    GateSpec,
    branch_energies,
    cnot_hamiltonian,
    cnot_permutation,
    copy_hamiltonian_pauli,
    copy_hamiltonian_projector,
    exact_synthesis,
    paper_block,
    single_copy_hamiltonian,
    single_copy_unitary,
    subspace_block,
    subspace_eigenphases,
    target_copy_unitary,
)

from oracles import X, Y, Z, idx, series_expm

PI = math.pi
angles = st.floats(-2 * PI, 2 * PI, allow_nan=False)
branches = st.integers(-3, 3)


def test_gate_spec_derived_fields():
    spec = GateSpec(n=2, alpha=0.3, beta=0.5, N1=4, N2=1)
    assert spec.gamma == pytest.approx(0.4)
    assert spec.N == 3
    assert spec.dim == 8


@pytest.mark.parametrize("kwargs", [{"n": 0}, {"n": 1, "dt": 0.0}, {"n": 1, "dt": -1.0}, {"n": 1, "N1": 0.5}])
def test_gate_spec_validation(kwargs):
    with pytest.raises(ValueError):
        GateSpec(**kwargs)


# -- target unitary -----------------------------------------------------------

def _swap(dim, a, b):
    p = np.eye(dim)
    p[[a, b]] = p[[b, a]]
    return p


def test_target_zero_phases_n1():
    assert np.array_equal(target_copy_unitary(GateSpec(n=1)), _swap(4, idx("11"), idx("10")))


def test_target_zero_phases_n2():
    assert np.array_equal(target_copy_unitary(GateSpec(n=2)), _swap(8, idx("111"), idx("100")))


def test_target_general_phases_n1():
    a, b, r = 0.3, -1.2, 2.0
    u = target_copy_unitary(GateSpec(n=1, alpha=a, beta=b, rho=r))
    expected = np.array([
        [0, np.exp(1j * b), 0, 0],
        [np.exp(1j * a), 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, np.exp(1j * r)],
    ])
    assert np.array_equal(u, expected)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), angles, angles, angles)
def test_target_is_unitary(n, a, b, r):
    spec = GateSpec(n=n, alpha=a, beta=b, rho=r)
    u = target_copy_unitary(spec)
    assert unitarity_residual(u) <= 1e-14
    assert u[idx("1" * (n + 1)), idx("1" + "0" * n)] == np.exp(1j * b)
    assert u[idx("1" + "0" * n), idx("1" * (n + 1))] == np.exp(1j * a)
    assert u[idx("0" * (n + 1)), idx("0" * (n + 1))] == np.exp(1j * r)


# -- eigenphases and branch energies -----------------------------------------

def _sorted_by_angle(values):
    return sorted(values, key=lambda z: (round(np.angle(z), 9), z.real))


@pytest.mark.parametrize(
    "phases, expected",
    [
        ((0.0, 0.0, 0.0), (1, -1, 1)),
        ((PI / 2, PI / 2, 0.0), (1j, -1j, 1)),
        ((0.3, 0.5, 0.2), (np.exp(0.4j), -np.exp(0.4j), np.exp(0.2j))),
    ],
)
def test_eigenphase_examples(phases, expected):
    spec = GateSpec(n=1, alpha=phases[0], beta=phases[1], rho=phases[2])
    got = subspace_eigenphases(spec)
    assert np.allclose(got, expected, atol=1e-15)
    numeric = np.linalg.eigvals(subspace_block(spec))
    assert np.allclose(_sorted_by_angle(numeric), _sorted_by_angle(expected), atol=1e-12)


def test_branch_energy_examples():
    assert np.allclose(branch_energies(GateSpec(n=1, N1=0, N2=0, N3=0)), (0, PI, 0), atol=1e-15)
    e = branch_energies(GateSpec(n=1, alpha=PI / 2, beta=PI / 2, N1=1, N2=0, N3=0))
    assert np.allclose(e, (3 * PI / 2, PI / 2, 0), atol=1e-14)


@settings(max_examples=50, deadline=None)
@given(angles, angles, angles, branches, branches, branches, st.floats(0.1, 5.0))
def test_branch_energies_reproduce_eigenphases(a, b, r, n1, n2, n3, dt):
    spec = GateSpec(n=1, alpha=a, beta=b, rho=r, N1=n1, N2=n2, N3=n3, dt=dt)
    phases = [np.exp(-1j * e * dt) for e in branch_energies(spec)]
    assert np.allclose(phases, subspace_eigenphases(spec), atol=1e-12)


# -- symmetric-spectrum block ------------------------------------------------

def test_paper_block_examples():
    assert np.allclose(paper_block(0.0, 1, 1.0), PI / 2 * np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]]), atol=0)
    assert np.allclose(
        paper_block(PI / 2, 1, 1.0), PI / 2 * np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]), atol=1e-16
    )


@pytest.mark.parametrize("gamma", [0.0, 0.4, PI / 2, -2.9])
@pytest.mark.parametrize("N", [-2, 0, 1, 3])
def test_paper_block_spectrum(gamma, N):
    h = paper_block(gamma, N, 2.0)
    assert np.array_equal(h, h.conj().T)
    w, _ = hermitian_eig(h)
    c = abs(PI / 2.0 * (N - 0.5))
    assert np.allclose(w, [-c, 0, c], atol=1e-13)


# -- full-space Hamiltonians --------------------------------------------------

def test_projector_examples():
    h = copy_hamiltonian_projector(1, 0.0, 1, 1.0)
    expected = np.zeros((4, 4))
    expected[0, 1] = expected[1, 0] = PI / 2
    assert np.array_equal(h, expected)

    h = copy_hamiltonian_projector(2, 0.7, 1, 1.0)
    up, src = idx("111"), idx("100")
    assert (up, src) == (0, 3)
    assert h[up, src] == pytest.approx(PI / 2 * np.exp(-0.7j), abs=1e-15)
    assert h[src, up] == pytest.approx(PI / 2 * np.exp(0.7j), abs=1e-15)
    assert np.count_nonzero(h) == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_projector_equals_ladder_form(n):
    for gamma in (0.0, 0.7, PI / 2, 2.3):
        for dt in (0.5, 1.0, 2.0):
            d = frobenius_distance(copy_hamiltonian_projector(n, gamma, 1, dt), copy_hamiltonian_pauli(n, gamma, dt))
            assert d <= 1e-12


def test_ladder_form_n3():
    assert frobenius_distance(copy_hamiltonian_pauli(3, 1.1, 2.0), copy_hamiltonian_projector(3, 1.1, 1, 2.0)) <= 1e-12


@pytest.mark.parametrize("gamma", [0.0, 0.3, PI / 2, 2.3, -1.0])
def test_ladder_form_n1_spin_components(gamma):
    expected = PI / 4 * np.kron(np.eye(2) + Z, math.cos(gamma) * X + math.sin(gamma) * Y)
    assert np.max(np.abs(copy_hamiltonian_pauli(1, gamma, 1.0) - expected)) <= 1e-13
    assert np.max(np.abs(single_copy_hamiltonian(gamma, 1.0) - expected)) <= 1e-15


@pytest.mark.parametrize("n", range(1, 6))
def test_hamiltonians_hermitian(n):
    for h in (copy_hamiltonian_projector(n, 0.9, 2, 0.5), copy_hamiltonian_pauli(n, 0.9, 0.5)):
        assert hermiticity_residual(h) <= 1e-12


@pytest.mark.parametrize("gamma", [0.0, 0.5, -2.2])
def test_single_copy_propagator_golden(gamma):
    u = propagator(copy_hamiltonian_projector(1, gamma, 1, 1.0), 1.0)
    expected = np.array([
        [0, -1j * np.exp(-1j * gamma), 0, 0],
        [-1j * np.exp(1j * gamma), 0, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ])
    assert np.max(np.abs(u - expected)) <= 1e-11
    assert np.array_equal(single_copy_unitary(gamma), expected)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("gamma", [0.0, 0.7, 2.3])
def test_copying_action_and_realized_phases(n, gamma):
    u = propagator(copy_hamiltonian_projector(n, gamma, 1, 1.0), 1.0)
    up, src, down = idx("1" * (n + 1)), idx("1" + "0" * n), idx("0" * (n + 1))
    assert abs(u[up, src] - (-1j * np.exp(-1j * gamma))) <= 1e-11
    assert abs(u[src, up] - (-1j * np.exp(1j * gamma))) <= 1e-11
    others = [b for b in range(2 ** (n + 1)) if b not in (up, src)]
    assert np.max(np.abs(np.abs(u[others, others]) - 1)) <= 1e-11


@pytest.mark.parametrize("n", [1, 2, 4])
@pytest.mark.parametrize("N", [-1, 0, 1, 2, 3])
@pytest.mark.parametrize("dt", [0.5, 1.0, 3.0])
def test_h_squared_closed_form(n, N, dt):
    gamma = 0.8
    h = copy_hamiltonian_projector(n, gamma, N, dt)
    up, src = idx("1" * (n + 1)), idx("1" + "0" * n)
    p = np.zeros_like(h)
    p[up, up] = p[src, src] = 1
    c = PI * (N - 0.5) / dt
    assert np.max(np.abs(h @ h - c**2 * p)) <= 1e-12
    # H/|c| squares to P, so exp(-i H dt) = I - P + cos(c dt) P - i sin(|c| dt) H/|c|
    theta = c * dt
    closed = np.eye(h.shape[0]) - p + math.cos(theta) * p - 1j * math.sin(abs(theta)) * h / abs(c)
    assert np.max(np.abs(propagator(h, dt) - closed)) <= 1e-11


# -- controlled-NOT -----------------------------------------------------------

def test_cnot_hamiltonian_blocks():
    h = cnot_hamiltonian(+1, 1.0)
    assert np.array_equal(h[2:, :], np.zeros((2, 4)))
    assert np.array_equal(h[:, 2:], np.zeros((4, 2)))
    assert np.allclose(h[:2, :2], PI / 2 * (np.eye(2) - X), atol=1e-16)
    assert np.array_equal(cnot_hamiltonian(-1, 1.0), -h)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("dt", [0.25, 1.0, 4.0])
def test_cnot_propagators_exact(sign, dt):
    h = cnot_hamiltonian(sign, dt)
    u = propagator(h, dt)
    assert np.max(np.abs(u - cnot_permutation())) <= 1e-11
    assert np.max(np.abs(series_expm(-1j * dt * h) - cnot_permutation())) <= 1e-11


def test_cnot_signs_agree():
    plus = propagator(cnot_hamiltonian(1, 1.0), 1.0)
    minus = propagator(cnot_hamiltonian(-1, 1.0), 1.0)
    assert frobenius_distance(plus, minus) <= 1e-11


def test_cnot_permutation_truth_table():
    p = cnot_permutation()
    for src, dst in (("11", "10"), ("10", "11"), ("01", "01"), ("00", "00")):
        out = p[:, idx(src)]
        assert out[idx(dst)] == 1 and np.count_nonzero(out) == 1


def test_cnot_bad_sign():
    with pytest.raises(ValueError):
        cnot_hamiltonian(2)


# -- exact synthesis ----------------------------------------------------------

def test_exact_synthesis_zero_phases():
    spec = GateSpec(n=1, N1=0, N2=0, N3=0)
    u = propagator(exact_synthesis(spec), 1.0)
    assert np.max(np.abs(u - _swap(4, idx("11"), idx("10")))) <= 1e-12


@pytest.mark.parametrize("branches", [(0, 0, 0), (1, 0, 0), (-3, 2, 1), (2, 2, -2)])
def test_exact_synthesis_target_entries(branches):
    n1, n2, n3 = branches
    spec = GateSpec(n=2, alpha=0.3, beta=0.5, rho=0.2, N1=n1, N2=n2, N3=n3)
    u = propagator(exact_synthesis(spec), spec.dt)
    assert abs(u[idx("111"), idx("100")] - np.exp(0.5j)) <= 1e-10
    assert abs(u[idx("100"), idx("111")] - np.exp(0.3j)) <= 1e-10
    assert abs(u[idx("000"), idx("000")] - np.exp(0.2j)) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), angles, angles, angles, branches, branches, branches, st.floats(0.2, 4.0))
def test_exact_synthesis_hits_target(n, a, b, r, n1, n2, n3, dt):
    spec = GateSpec(n=n, alpha=a, beta=b, rho=r, N1=n1, N2=n2, N3=n3, dt=dt)
    h = exact_synthesis(spec)
    assert hermiticity_residual(h) <= 1e-12
    u = propagator(h, dt)
    assert frobenius_distance(u, target_copy_unitary(spec)) <= 1e-10
    # block spectrum is exactly the branch energies
    w = np.linalg.eigvalsh(h[np.ix_(*[[idx("1" * (n + 1)), idx("1" + "0" * n), idx("0" * (n + 1))]] * 2)])
    assert np.allclose(sorted(w), sorted(branch_energies(spec)), atol=1e-10)


@pytest.mark.parametrize("field", ["N1", "N2", "N3"])
def test_branch_shift_changes_h_not_u(field):
    spec = GateSpec(n=2, alpha=1.1, beta=-0.4, rho=0.9, N1=0, N2=0, N3=0, dt=1.5)
    shifted = GateSpec(**{**spec.__dict__, field: getattr(spec, field) + 1})
    h0, h1 = exact_synthesis(spec), exact_synthesis(shifted)
    assert frobenius_distance(h0, h1) > 1.0
    assert frobenius_distance(propagator(h0, 1.5), propagator(h1, 1.5)) <= 1e-10


def test_exact_synthesis_zero_outside_subspace():
    spec = GateSpec(n=3, alpha=0.2, beta=0.1, rho=-0.3)
    h = exact_synthesis(spec)
    keep = [basis_index("1111"), basis_index("1000"), basis_index("0000")]
    mask = np.ones(h.shape, dtype=bool)
    mask[np.ix_(keep, keep)] = False
    assert not np.any(h[mask])
