"""Pass/fail checks with residuals for copying gates and controlled-NOT."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import (
    DimMismatch,
    NotUnitary,
    Operator,
    all_down,
    as_operator,
    basis_index,
    copy_image,
    copy_source,
    frobenius_norm,
    unitarity_residual,
)
from .serialize import report_to_json

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    residuals: dict[str, float]
    realized_phases: dict[str, complex]
    tolerance: float
    diagnostic: str = ""
    passed: bool = field(init=False)

    def __post_init__(self):
        ok = all(r <= self.tolerance for r in self.residuals.values())
        object.__setattr__(self, "passed", bool(ok))

    def to_json(self) -> str:
        return report_to_json(self)

    def summary(self) -> str:
        worst = max(self.residuals.values(), default=0.0)
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check_name}: max residual {worst:.3e} (tol {self.tolerance:.1e})"


def _require_unitary(u: Operator, tol: float) -> None:
    res = unitarity_residual(u)
    if res > tol:
        raise NotUnitary(res, tol)


def _phase_residuals(phases: dict[str, complex]) -> dict[str, float]:
    return {f"phase {k}": float(abs(v - 1.0)) for k, v in phases.items()}


def verify_copying(
    u: Operator,
    n: int,
    tol: float = DEFAULT_TOL,
    strict_phases: bool = False,
    spectators: bool = True,
) -> VerificationReport:
    """Check that ``u`` sends |10...0> to |11...1> and |00...0> to itself.

    Both conditions are checked on modulus. With ``spectators`` the report
    also requires every basis state outside span{|11...1>, |10...0>,
    |00...0>} to be mapped to itself up to phase; the staged construction
    does not do this, hence the switch. ``strict_phases`` additionally
    requires the realized phases to be 1.
    """
    u = as_operator(u)
    dim = 1 << (n + 1)
    if u.shape != (dim, dim):
        raise DimMismatch(f"expected a {dim}x{dim} operator for n={n}, got {u.shape}")
    _require_unitary(u, tol)

    up, src, down = (basis_index(s) for s in (copy_image(n), copy_source(n), all_down(n)))
    fwd, back, stay = u[up, src], u[src, up], u[down, down]
    residuals = {
        "|<1..1|U|10..0>| - 1": float(abs(1.0 - abs(fwd))),
        "|<0..0|U|0..0>| - 1": float(abs(1.0 - abs(stay))),
    }
    if spectators:
        others = np.ones(dim, dtype=bool)
        others[[up, src, down]] = False
        diag = np.abs(np.diag(u))[others]
        residuals["max other |<b|U|b>| - 1"] = float(np.max(np.abs(1.0 - diag))) if diag.size else 0.0
    phases = {
        "<1..1|U|10..0>": complex(fwd),
        "<10..0|U|1..1>": complex(back),
        "<0..0|U|0..0>": complex(stay),
    }
    if strict_phases:
        residuals.update(_phase_residuals(phases))
    return VerificationReport("copy", residuals, phases, tol)


def verify_cnot_truth_table(u: Operator, tol: float = DEFAULT_TOL, strict_phases: bool = False) -> VerificationReport:
    """Check the classical controlled-NOT pattern on modulus, plus leakage."""
    u = as_operator(u)
    if u.shape != (4, 4):
        raise DimMismatch(f"controlled-NOT check needs a 4x4 operator, got {u.shape}")
    pattern = {
        "<10|U|11>": ("10", "11"),
        "<11|U|10>": ("11", "10"),
        "<01|U|01>": ("01", "01"),
        "<00|U|00>": ("00", "00"),
    }
    mask = np.ones((4, 4), dtype=bool)
    phases: dict[str, complex] = {}
    residuals: dict[str, float] = {}
    for label, (out_bits, in_bits) in pattern.items():
        r, c = basis_index(out_bits), basis_index(in_bits)
        mask[r, c] = False
        phases[label] = complex(u[r, c])
        residuals[f"|{label}| - 1"] = float(abs(1.0 - abs(u[r, c])))
    residuals["off-pattern leakage"] = float(np.max(np.abs(u[mask])))
    if strict_phases:
        residuals.update(_phase_residuals(phases))
    return VerificationReport("cnot", residuals, phases, tol)


def equal_up_to_global_phase(a: Operator, b: Operator, tol: float = DEFAULT_TOL) -> VerificationReport:
    """min over |phi| = 1 of ||a - phi b||_F, attained at phi = tr(b^H a)/|tr(b^H a)|."""
    a, b = as_operator(a), as_operator(b)
    if a.shape != b.shape:
        raise DimMismatch(f"cannot compare {a.shape} with {b.shape}")
    _require_unitary(a, tol)
    _require_unitary(b, tol)
    overlap = complex(np.vdot(b, a))
    diagnostic = ""
    if abs(overlap) <= tol:
        # ||a - phi b|| no longer depends on phi
        phi = 1.0 + 0.0j
        diagnostic = "trace(b^H a) vanishes: operators are not related by a global phase"
    else:
        phi = overlap / abs(overlap)
    residual = frobenius_norm(a - phi * b)
    return VerificationReport(
        "phase-equal",
        {"min_phi ||a - phi b||_F": residual},
        {"phi": phi},
        tol,
        diagnostic,
    )
