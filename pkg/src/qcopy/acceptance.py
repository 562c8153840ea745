"""Acceptance criteria, shared by ``qcopy selftest`` and the test suite.

Each check returns one or more :class:`Result` lines. Random draws use fixed
seeds so every run evaluates the same inputs.
"""
from __future__ import annotations

import io
import itertools
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import evolution, pauli, synthesis, verify
from .operators import basis_index, basis_ket, frobenius_distance, propagator
from .synthesis import GateSpec

REPORT_TOL = 1e-10
PULSE_STATES = {
    "|10>": basis_ket("10"),
    "|11>": basis_ket("11"),
    "(|10>+|00>)/sqrt2": (basis_ket("10") + basis_ket("00")) / math.sqrt(2),
}


@dataclass(frozen=True)
class Result:
    criterion: int
    name: str
    passed: bool
    value: float
    tol: float
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] C{self.criterion:<2d} {self.name}: {self.value:.3e} (tol {self.tol:g})"
        return f"{text} {self.note}" if self.note else text


def _result(criterion, name, value, tol, note="") -> Result:
    return Result(criterion, name, bool(value <= tol), float(value), tol, note)


def _multiset_distance(a, b) -> float:
    return min(max(abs(x - y) for x, y in zip(a, perm)) for perm in itertools.permutations(b))


def eigenphases(samples: int = 50, seed: int = 1) -> list[Result]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        a, b, r = rng.uniform(-2 * math.pi, 2 * math.pi, 3)
        spec = GateSpec(n=1, alpha=a, beta=b, rho=r)
        numeric = np.linalg.eigvals(synthesis.subspace_block(spec))
        worst = max(worst, _multiset_distance(synthesis.subspace_eigenphases(spec), numeric))
    return [_result(1, f"block eigenvalues = (e^ig, -e^ig, e^ir), {samples} draws", worst, 1e-12)]


def form_equivalence() -> list[Result]:
    worst = 0.0
    for n, gamma, dt in itertools.product(range(1, 9), (0.0, 0.7, math.pi / 2, 2.3), (0.5, 1.0, 2.0)):
        worst = max(worst, frobenius_distance(
            synthesis.copy_hamiltonian_projector(n, gamma, 1, dt),
            synthesis.copy_hamiltonian_pauli(n, gamma, dt),
        ))
    worst14 = 0.0
    for gamma, dt in itertools.product((0.0, 0.7, math.pi / 2, 2.3, -1.3), (0.5, 1.0, 2.0)):
        worst14 = max(worst14, frobenius_distance(
            synthesis.copy_hamiltonian_pauli(1, gamma, dt),
            synthesis.single_copy_hamiltonian(gamma, dt),
        ))
    return [
        _result(2, "projector form = ladder form, n=1..8", worst, 1e-12),
        _result(2, "ladder form n=1 = spin-component form", worst14, 1e-13),
    ]


def golden_propagator(samples: int = 20, seed: int = 3) -> list[Result]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        gamma = rng.uniform(-math.pi, math.pi)
        dt = rng.uniform(0.2, 5.0)
        u = propagator(synthesis.copy_hamiltonian_projector(1, gamma, 1, dt), dt)
        worst = max(worst, float(np.max(np.abs(u - synthesis.single_copy_unitary(gamma)))))
    return [_result(3, f"n=1 propagator = closed-form matrix, {samples} draws", worst, 1e-11)]


def copying_conditions(tol: float = REPORT_TOL) -> list[Result]:
    worst_res, worst_phase, failures = 0.0, 0.0, 0
    for n, gamma in itertools.product(range(1, 9), (0.0, 0.7, math.pi / 2, 2.3)):
        u = propagator(synthesis.copy_hamiltonian_projector(n, gamma, 1, 1.0), 1.0)
        rep = verify.verify_copying(u, n, tol)
        failures += not rep.passed
        worst_res = max(worst_res, *rep.residuals.values())
        expected = (-1j * np.exp(-1j * gamma), -1j * np.exp(1j * gamma), 1.0)
        worst_phase = max(worst_phase, *(abs(p - e) for p, e in zip(rep.realized_phases.values(), expected)))
    return [
        Result(4, "copying reports pass, n=1..8", failures == 0 and worst_res <= tol, worst_res, tol),
        _result(4, "realized phases (-ie^-ig, -ie^ig, 1)", worst_phase, tol),
    ]


def cnot_family() -> list[Result]:
    perm = synthesis.cnot_permutation()
    worst, failures = 0.0, 0
    for sign, dt in itertools.product((1, -1), (0.5, 1.0, 2.0)):
        u = propagator(synthesis.cnot_hamiltonian(sign, dt), dt)
        worst = max(worst, float(np.max(np.abs(u - perm))))
        rep = verify.verify_cnot_truth_table(u, 1e-11, strict_phases=True)
        failures += not rep.passed
    return [
        _result(5, "both signs give the exact CNOT permutation", worst, 1e-11),
        Result(5, "strict-phase truth table, both signs", failures == 0, float(failures), 0.0),
    ]


def _random_spec(rng) -> GateSpec:
    a, b, r = rng.uniform(-2 * math.pi, 2 * math.pi, 3)
    n1, n2, n3 = (int(x) for x in rng.integers(-3, 4, 3))
    return GateSpec(n=int(rng.integers(1, 5)), alpha=a, beta=b, rho=r,
                    N1=n1, N2=n2, N3=n3, dt=float(rng.uniform(0.25, 4.0)))


def exact_synthesis_fidelity(samples: int = 20, seed: int = 5) -> list[Result]:
    rng = np.random.default_rng(seed)
    worst, worst_shift = 0.0, 0.0
    for _ in range(samples):
        spec = _random_spec(rng)
        u = propagator(synthesis.exact_synthesis(spec), spec.dt)
        worst = max(worst, frobenius_distance(u, synthesis.target_copy_unitary(spec)))
        for field in ("N1", "N2", "N3"):
            shifted = GateSpec(**{**spec.__dict__, field: getattr(spec, field) + 1})
            u2 = propagator(synthesis.exact_synthesis(shifted), spec.dt)
            worst_shift = max(worst_shift, frobenius_distance(u, u2))
    return [
        _result(6, f"exact synthesis hits target, {samples} specs", worst, 1e-10),
        _result(6, "branch shift N_k -> N_k+1 leaves U unchanged", worst_shift, 1e-10),
    ]


def brute_force_coefficients(h: np.ndarray) -> dict[str, complex]:
    """trace(P^H h)/2^k for every Pauli string P, by explicit materialization."""
    k = int(round(math.log2(h.shape[0])))
    out = {}
    for letters in itertools.product("IXYZ", repeat=k):
        s = "".join(letters)
        out[s] = complex(np.vdot(pauli.pauli_string(s), h)) / h.shape[0]
    return out


def pauli_oracle(gamma: float = 0.7, brute_max_n: int = 4) -> list[Result]:
    bad_counts, worst_recompose, worst_imag, worst_mag, worst_brute = [], 0.0, 0.0, 0.0, 0.0
    for n in range(1, 7):
        h = synthesis.copy_hamiltonian_pauli(n, gamma, 1.0)
        terms = pauli.decompose(h)
        if len(terms) != 2 ** (n + 1):
            bad_counts.append(n)
        worst_recompose = max(worst_recompose, float(np.max(np.abs(pauli.recompose(terms) - h))))
        worst_imag = max(worst_imag, max(abs(t.coefficient.imag) for t in terms))
        # each string has y Y-letters; its coefficient is +/- pi/2^(n+1) times cos(gamma) or sin(gamma)
        for t in terms:
            trig = abs(math.cos(gamma)) if t.letters.count("Y") % 2 == 0 else abs(math.sin(gamma))
            worst_mag = max(worst_mag, abs(abs(t.coefficient) - math.pi / 2 ** (n + 1) * trig))
        if n <= brute_max_n:
            brute = brute_force_coefficients(h)
            fast = {t.letters: t.coefficient for t in terms}
            worst_brute = max(worst_brute, max(abs(v - fast.get(s, 0.0)) for s, v in brute.items()))
    h1 = synthesis.copy_hamiltonian_pauli(1, 0.0, 1.0)
    got = {t.letters: t.coefficient for t in pauli.decompose(h1)}
    n1_err = math.inf if set(got) != {"IX", "ZX"} else max(abs(got[s] - math.pi / 4) for s in got)
    return [
        Result(7, "term count 2^(n+1), n=1..6", not bad_counts, float(len(bad_counts)), 0.0,
               f"bad n: {bad_counts}" if bad_counts else ""),
        _result(7, "recomposition residual", worst_recompose, 1e-11),
        _result(7, "coefficients real", worst_imag, 1e-13),
        _result(7, "coefficient magnitudes pi/2^(n+1)*|cos|,|sin|", worst_mag, 1e-13),
        _result(7, f"fast = exhaustive projection, n<={brute_max_n}", worst_brute, 1e-13),
        _result(7, "n=1 gamma=0 -> {pi/4 IX, pi/4 ZX}", n1_err, 1e-13),
    ]


def rk4_errors(steps=(250, 500, 1000), gamma: float = 0.0) -> list[float]:
    h = synthesis.single_copy_hamiltonian(gamma, 1.0)
    psi0 = basis_ket("10")
    exact = propagator(h, 1.0) @ psi0
    return [float(np.linalg.norm(evolution.pulse_evolve(h, "constant", 1.0, psi0, s) - exact)) for s in steps]


def pulse_independence(steps: int = 4000) -> list[Result]:
    worst = 0.0
    for gamma in (0.0, 0.9):
        h = synthesis.single_copy_hamiltonian(gamma, 1.0)
        u = propagator(h, 1.0)
        for psi0 in PULSE_STATES.values():
            exact = u @ psi0
            for kind in evolution.PROFILES:
                psi = evolution.pulse_evolve(h, kind, 1.0, psi0, steps)
                worst = max(worst, float(np.max(np.abs(psi - exact))))
    errs = rk4_errors()
    ratios = [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
    ratio_ok = all(12.0 <= r <= 20.0 for r in ratios)
    return [
        _result(8, "sine/square/constant endpoints = exact propagator", worst, 1e-7),
        Result(8, "RK4 error ratio per step halving in [12, 20]", ratio_ok, min(ratios), 12.0,
               "ratios " + ", ".join(f"{r:.2f}" for r in ratios)),
    ]


def staged_copying(tol: float = REPORT_TOL) -> list[Result]:
    worst_res, worst_phase, failures = 0.0, 0.0, 0
    for n, gamma in itertools.product(range(2, 7), (0.0, 0.7, 2.3)):
        _, composed = evolution.staged_copy(evolution.StagePlan(n, gamma, 1.0))
        rep = verify.verify_copying(composed, n, tol, spectators=False)
        failures += not rep.passed
        worst_res = max(worst_res, *rep.residuals.values())
        expected = (-1j * np.exp(-1j * gamma)) ** n
        worst_phase = max(worst_phase, abs(rep.realized_phases["<1..1|U|10..0>"] - expected))
    _, c2 = evolution.staged_copy(evolution.StagePlan(2, 0.7, 1.0))
    image = c2 @ basis_ket("110")
    leak = float(np.linalg.norm(image) ** 2 - abs(image[basis_index("101")]) ** 2)
    return [
        Result(9, "staged copying conditions, n=2..6", failures == 0, worst_res, tol),
        _result(9, "staged up-copy phase (-ie^-ig)^n", worst_phase, tol),
        _result(9, "counterexample |110> -> multiple of |101>", abs(leak), 1e-12),
    ]


CLI_GRID = [(n, g, N) for n in range(1, 7) for g in ("0", "0.7", "pi/2") for N in (0, 1, 2)]


def _cli(argv) -> tuple[int, str]:
    from .cli import run

    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue() + err.getvalue()


def cli_round_trip(tol: float = REPORT_TOL, grid=None) -> list[Result]:
    grid = CLI_GRID if grid is None else grid
    failures, nondeterministic = [], []
    with tempfile.TemporaryDirectory() as tmp:
        for n, g, N in grid:
            gamma_flag = ["--gamma-pi", "0.5"] if g == "pi/2" else ["--gamma", g]
            h_path, u_path = os.path.join(tmp, "h.json"), os.path.join(tmp, "u.json")
            steps = [
                ["synth", "--n", str(n), *gamma_flag, "--branch", str(N), "--dt", "1", "--form", "projector", "--out", h_path],
                ["propagate", "--h", h_path, "--dt", "1", "--out", u_path],
                ["verify", "copy", "--u", u_path, "--n", str(n), "--tol", repr(tol)],
            ]
            outputs = []
            for _ in range(2):
                codes, texts = [], []
                for argv in steps:
                    code, text = _cli(argv)
                    codes.append(code)
                    with open(h_path if argv[0] == "synth" else u_path, "rb") as fh:
                        file_bytes = fh.read()
                    texts.append(text.encode() + file_bytes)
                outputs.append((codes, texts))
            if any(outputs[0][0]):
                failures.append((n, g, N))
            if outputs[0] != outputs[1]:
                nondeterministic.append((n, g, N))
    return [
        Result(10, f"synth|propagate|verify exits 0 on {len(grid)} grid points", not failures,
               float(len(failures)), 0.0, f"failing: {failures}" if failures else ""),
        Result(10, "byte-identical re-runs", not nondeterministic, float(len(nondeterministic)), 0.0),
    ]


CRITERIA: list[tuple[int, Callable[..., list[Result]]]] = [
    (1, eigenphases),
    (2, form_equivalence),
    (3, golden_propagator),
    (4, copying_conditions),
    (5, cnot_family),
    (6, exact_synthesis_fidelity),
    (7, pauli_oracle),
    (8, pulse_independence),
    (9, staged_copying),
    (10, cli_round_trip),
]

_TAKES_TOL = {copying_conditions, staged_copying, cli_round_trip}


def run_all(tol: float | None = None) -> list[Result]:
    results = []
    for _, check in CRITERIA:
        if tol is not None and check in _TAKES_TOL:
            results.extend(check(tol=tol))
        else:
            results.extend(check())
    return results
