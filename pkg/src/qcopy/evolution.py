"""Pulse-shaped Schrodinger integration and staged single-copy gates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .operators import (
    Ket,
    Operator,
    as_operator,
    check_hermitian,
    check_ket,
    embed,
    identity,
    propagator,
)
from .synthesis import copy_hamiltonian_projector

PROFILES = ("constant", "sine", "square")
MIN_STEPS = 100


@dataclass(frozen=True)
class PulseProfile:
    """Time modulation f(t) on [0, dt] with unit average.

    constant: f = 1; sine: f = (pi/2) sin(pi t / dt); square: f = 2 on
    [dt/4, 3 dt/4] and 0 elsewhere.
    """

    kind: str = "constant"

    def __post_init__(self):
        if self.kind not in PROFILES:
            raise ValueError(f"unknown pulse profile {self.kind!r}; expected one of {PROFILES}")

    def value(self, t: float, dt: float, side: int = 0) -> float:
        """f(t); for the square pulse ``side`` picks the limit at a jump (+1 right, -1 left)."""
        if self.kind == "constant":
            return 1.0
        if self.kind == "sine":
            return 0.5 * math.pi * math.sin(math.pi * t / dt)
        lo, hi = 0.25 * dt, 0.75 * dt
        if side > 0:
            return 2.0 if lo <= t < hi else 0.0
        if side < 0:
            return 2.0 if lo < t <= hi else 0.0
        return 2.0 if lo <= t <= hi else 0.0

    def integral(self, t: float, dt: float) -> float:
        """Closed-form antiderivative F(t) = int_0^t f, for 0 <= t <= dt."""
        if self.kind == "constant":
            return t
        if self.kind == "sine":
            return 0.5 * dt * (1.0 - math.cos(math.pi * t / dt))
        return 2.0 * min(max(t - 0.25 * dt, 0.0), 0.5 * dt)

    def average(self, dt: float) -> float:
        return self.integral(dt, dt) / dt


def pulse_evolve(
    h: Operator,
    profile: PulseProfile | str,
    dt: float,
    psi0: Ket,
    steps: int = 2000,
) -> Ket:
    """Integrate i dpsi/dt = f(t) h psi over [0, dt] with fixed-step RK4.

    Stage times are sampled inside each step, so for the square pulse the
    step that ends on a jump sees the value from its own side. ``steps``
    must be at least 100, and a multiple of 4 for the square pulse so both
    jumps land on grid points.
    """
    if isinstance(profile, str):
        profile = PulseProfile(profile)
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if int(steps) != steps or steps < MIN_STEPS:
        raise ValueError(f"steps must be an integer >= {MIN_STEPS}, got {steps}")
    if profile.kind == "square" and steps % 4:
        raise ValueError("square pulse needs steps divisible by 4")
    h = check_hermitian(as_operator(h))
    psi = check_ket(psi0, h.shape[0]).copy()
    if not np.any(h):
        return psi

    gen = -1j * h
    step = dt / steps
    for k in range(steps):
        # (k / steps) * dt is exact at k = steps/4 and 3 steps/4, where the square pulse jumps
        f0 = profile.value(k / steps * dt, dt, side=+1)
        fm = profile.value((k + 0.5) / steps * dt, dt)
        f1 = profile.value((k + 1) / steps * dt, dt, side=-1)
        k1 = f0 * (gen @ psi)
        k2 = fm * (gen @ (psi + 0.5 * step * k1))
        k3 = fm * (gen @ (psi + 0.5 * step * k2))
        k4 = f1 * (gen @ (psi + step * k3))
        psi = psi + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return psi


@dataclass(frozen=True)
class StagePlan:
    """One single-copy gate per copy qubit, all controlled by qubit 1."""

    n: int
    gamma: float = 0.0
    dt_per_stage: float = 1.0
    stages: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"copy count must be >= 1, got {self.n}")
        if not self.dt_per_stage > 0:
            raise ValueError("dt_per_stage must be positive")
        if not self.stages:
            object.__setattr__(self, "stages", tuple((1, j) for j in range(2, self.n + 2)))
        targets = [t for _, t in self.stages]
        if (
            len(self.stages) != self.n
            or any(c != 1 for c, _ in self.stages)
            or sorted(targets) != list(range(2, self.n + 2))
        ):
            raise ValueError(f"stages must target each of qubits 2..{self.n + 1} once from control 1")


def staged_copy(plan: StagePlan) -> tuple[list[Operator], Operator]:
    """Embed the n = 1 copying propagator on each (control, target) pair.

    Returns the per-stage gates and their product, first stage applied first.
    """
    n_qubits = plan.n + 1
    single = propagator(
        copy_hamiltonian_projector(1, plan.gamma, 1, plan.dt_per_stage), plan.dt_per_stage
    )
    gates = [embed(single, pair, n_qubits) for pair in plan.stages]
    composed = identity(1 << n_qubits)
    for g in gates:
        composed = g @ composed
    return gates, composed
