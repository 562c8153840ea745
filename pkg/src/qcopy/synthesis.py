"""Hamiltonians that copy the basis states of one qubit onto n others.

The target gate sends |10...0> -> e^{i beta}|11...1>, |11...1> ->
e^{i alpha}|10...0>, |00...0> -> e^{i rho}|00...0> and leaves every other
basis state alone. Only the 3-state subspace (|11...1>, |10...0>, |00...0>)
is nontrivial, so everything here reduces to 3x3 (or 2x2) algebra embedded
into the 2^(n+1)-dimensional register.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .operators import (
    Operator,
    all_down,
    basis_index,
    copy_image,
    copy_source,
    identity,
    tensor_product,
)
from .pauli import I2, UP_PROJECTOR_2, X, Y, Z, ladder_string


@dataclass(frozen=True)
class GateSpec:
    """Target phases, branch integers and timing for an n-copy gate."""

    n: int
    alpha: float = 0.0
    beta: float = 0.0
    rho: float = 0.0
    N1: int = 1
    N2: int = 0
    N3: int = 0
    dt: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"copy count must be an integer >= 1, got {self.n}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        for name in ("N1", "N2", "N3"):
            if int(getattr(self, name)) != getattr(self, name):
                raise ValueError(f"{name} must be an integer")

    @property
    def gamma(self) -> float:
        return (self.alpha + self.beta) / 2

    @property
    def N(self) -> int:
        return self.N1 - self.N2

    @property
    def dim(self) -> int:
        return 1 << (self.n + 1)


class EnergyTriple(NamedTuple):
    E1: float
    E2: float
    E3: float


def subspace_indices(n: int) -> tuple[int, int, int]:
    """Register indices of |11...1>, |10...0>, |00...0>, in that order."""
    return basis_index(copy_image(n)), basis_index(copy_source(n)), basis_index(all_down(n))


def target_copy_unitary(spec: GateSpec) -> Operator:
    up, src, down = subspace_indices(spec.n)
    u = identity(spec.dim)
    u[up, up] = 0.0
    u[src, src] = 0.0
    u[up, src] = np.exp(1j * spec.beta)
    u[src, up] = np.exp(1j * spec.alpha)
    u[down, down] = np.exp(1j * spec.rho)
    return u


def subspace_block(spec: GateSpec) -> Operator:
    """The 3x3 restriction of the target unitary to the copying subspace."""
    return np.array(
        [
            [0, np.exp(1j * spec.beta), 0],
            [np.exp(1j * spec.alpha), 0, 0],
            [0, 0, np.exp(1j * spec.rho)],
        ],
        dtype=np.complex128,
    )


def subspace_eigenphases(spec: GateSpec) -> tuple[complex, complex, complex]:
    g = np.exp(1j * spec.gamma)
    return complex(g), complex(-g), complex(np.exp(1j * spec.rho))


def branch_energies(spec: GateSpec) -> EnergyTriple:
    """Energies whose phases e^{-i E dt} reproduce the three eigenphases."""
    a_b, dt = spec.alpha + spec.beta, spec.dt
    two_pi = 2 * math.pi
    return EnergyTriple(
        -a_b / (2 * dt) + two_pi * spec.N1 / dt,
        -a_b / (2 * dt) + two_pi * (spec.N2 + 0.5) / dt,
        -spec.rho / dt + two_pi * spec.N3 / dt,
    )


def _coupling(N: int, dt: float) -> float:
    return math.pi / dt * (N - 0.5)


def paper_block(gamma: float, N: int, dt: float) -> Operator:
    """Symmetric-spectrum Hamiltonian on the 3-state subspace."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    off = np.exp(-1j * gamma)
    block = np.zeros((3, 3), dtype=np.complex128)
    block[0, 1] = off
    block[1, 0] = off.conjugate()
    return _coupling(N, dt) * block


def copy_hamiltonian_projector(n: int, gamma: float = 0.0, N: int = 1, dt: float = 1.0) -> Operator:
    """c (e^{-i gamma}|1...1><10...0| + h.c.) with c = (pi/dt)(N - 1/2)."""
    if n < 1 or not dt > 0:
        raise ValueError(f"need n >= 1 and dt > 0, got n={n}, dt={dt}")
    up, src, _ = subspace_indices(n)
    h = np.zeros((1 << (n + 1),) * 2, dtype=np.complex128)
    c = _coupling(N, dt)
    off = np.exp(-1j * gamma)
    h[up, src] = c * off
    h[src, up] = c * off.conjugate()
    return h


def copy_hamiltonian_pauli(n: int, gamma: float = 0.0, dt: float = 1.0) -> Operator:
    """The N = 1 copying Hamiltonian assembled from spin operators.

    (pi / (2^(n+2) dt)) (1 + Z_1) (e^{-i gamma} s+_2...s+_{n+1} + e^{i gamma} s-_2...s-_{n+1})
    """
    if n < 1 or not dt > 0:
        raise ValueError(f"need n >= 1 and dt > 0, got n={n}, dt={dt}")
    ladders = np.exp(-1j * gamma) * ladder_string([+1] * n) + np.exp(1j * gamma) * ladder_string([-1] * n)
    return math.pi / (2 ** (n + 2) * dt) * tensor_product(UP_PROJECTOR_2, ladders)


def single_copy_hamiltonian(gamma: float = 0.0, dt: float = 1.0) -> Operator:
    """n = 1 form: (pi/(4 dt)) (1 + Z_1)(cos gamma X_2 + sin gamma Y_2)."""
    return math.pi / (4 * dt) * tensor_product(
        UP_PROJECTOR_2, math.cos(gamma) * X + math.sin(gamma) * Y
    )


def cnot_hamiltonian(sign: int = 1, dt: float = 1.0) -> Operator:
    """+/- (pi/(4 dt)) (1 + Z_1)(1 - X_2); both signs give the exact CNOT at time dt."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    return sign * math.pi / (4 * dt) * tensor_product(UP_PROJECTOR_2, I2 - X)


def cnot_permutation() -> Operator:
    """Classical controlled-NOT in the (|11>, |10>, |01>, |00>) ordering."""
    return np.array(
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=np.complex128
    )


def single_copy_unitary(gamma: float = 0.0) -> Operator:
    """Closed-form propagator of the N = 1, n = 1 copying Hamiltonian."""
    u = np.eye(4, dtype=np.complex128)
    u[0, 0] = u[1, 1] = 0.0
    u[0, 1] = -1j * np.exp(-1j * gamma)
    u[1, 0] = -1j * np.exp(1j * gamma)
    return u


def exact_synthesis(spec: GateSpec) -> Operator:
    """Hamiltonian whose propagator over ``spec.dt`` is exactly the target gate.

    Uses the closed-form eigenvectors of the 3x3 target block:
    (e^{i(beta-alpha)/2}, +/-1, 0)/sqrt(2) for eigenvalues +/-e^{i gamma} and
    (0, 0, 1) for e^{i rho}. The block Hamiltonian is V diag(E1, E2, E3) V^H
    with the branch energies, embedded with zeros outside the subspace.
    """
    e1, e2, e3 = branch_energies(spec)
    w = np.exp(1j * (spec.beta - spec.alpha) / 2)
    r = 1 / math.sqrt(2)
    v = np.array([[r * w, -r * w, 0], [r, r, 0], [0, 0, 1]], dtype=np.complex128)
    block = (v * np.array([e1, e2, e3])) @ v.conj().T
    idx = subspace_indices(spec.n)
    h = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    h[np.ix_(idx, idx)] = block
    return h
