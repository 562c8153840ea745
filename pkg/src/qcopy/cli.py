"""Command-line interface: ``qcopy <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails (the report is
still written) and 2 on usage, parse or input errors.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence, TextIO

from . import evolution, pauli, synthesis, verify
from .operators import (
    DimMismatch,
    NotHermitian,
    NotNormalized,
    NotUnitary,
    basis_ket,
    propagator,
    qubit_count,
)
from .serialize import MalformedInput, ket_to_json, operator_to_json, read_operator, write_text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _sign(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be +1 or -1, not {text!r}")


def _add_gamma(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--gamma", type=float, help="phase gamma in radians (default 0)")
    g.add_argument("--gamma-pi", type=float, help="phase gamma as a multiple of pi")


def _gamma(args) -> float:
    if args.gamma_pi is not None:
        return args.gamma_pi * math.pi
    return 0.0 if args.gamma is None else args.gamma


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcopy", description="Quantum copying Hamiltonians and their checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="build a Hamiltonian")
    p.add_argument("--n", type=int, default=1, help="number of copy qubits")
    _add_gamma(p)
    p.add_argument("--branch", type=int, default=1, help="branch integer N (default 1)")
    p.add_argument("--dt", type=float, default=1.0)
    p.add_argument("--form", choices=("projector", "pauli", "cnot", "exact"), default="projector")
    p.add_argument("--sign", type=_sign, default=1, help="sign of the controlled-NOT Hamiltonian")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--n2", type=int, default=0)
    p.add_argument("--n3", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("decompose", help="Pauli-string expansion of an operator")
    p.add_argument("--h", required=True)
    p.add_argument("--prune", type=float, default=pauli.PRUNE)

    p = sub.add_parser("propagate", help="exp(-i H dt)")
    p.add_argument("--h", required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--out")

    p = sub.add_parser("pulse", help="RK4 evolution under f(t) H")
    p.add_argument("--h", required=True)
    p.add_argument("--profile", choices=evolution.PROFILES, default="constant")
    p.add_argument("--dt", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--psi0", required=True, help="basis state as a bitstring, qubit 1 first")
    p.add_argument("--out")

    p = sub.add_parser("stage", help="copy one qubit at a time")
    p.add_argument("--n", type=int, required=True)
    _add_gamma(p)
    p.add_argument("--dt", type=float, default=1.0)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a unitary")
    vsub = p.add_subparsers(dest="check", required=True, parser_class=_Parser)
    v = vsub.add_parser("copy")
    v.add_argument("--u", required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    v.add_argument("--strict-phases", action="store_true")
    v.add_argument("--conditions-only", action="store_true",
                   help="skip the check that all other basis states are left alone")
    v = vsub.add_parser("cnot")
    v.add_argument("--u", required=True)
    v.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    v.add_argument("--strict-phases", action="store_true")
    v = vsub.add_parser("phase-equal")
    v.add_argument("--a", required=True)
    v.add_argument("--b", required=True)
    v.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--tol", type=float, default=None,
                   help="tolerance for the report-based criteria (default 1e-10)")
    return parser


def _emit(text: str, out: str | None, stdout: TextIO) -> None:
    if out:
        write_text(out, text)
    else:
        stdout.write(text)


def _synth(args):
    gamma = _gamma(args)
    if args.form == "projector":
        return synthesis.copy_hamiltonian_projector(args.n, gamma, args.branch, args.dt)
    if args.form == "pauli":
        if args.branch != 1:
            raise UsageError("--form pauli is defined for --branch 1 only")
        return synthesis.copy_hamiltonian_pauli(args.n, gamma, args.dt)
    if args.form == "cnot":
        return synthesis.cnot_hamiltonian(args.sign, args.dt)
    spec = synthesis.GateSpec(
        n=args.n, alpha=args.alpha, beta=args.beta, rho=args.rho,
        N1=args.n1, N2=args.n2, N3=args.n3, dt=args.dt,
    )
    return synthesis.exact_synthesis(spec)


def _dispatch(args, stdout: TextIO) -> int:
    cmd = args.command
    if cmd == "synth":
        _emit(operator_to_json(_synth(args)), args.out, stdout)
    elif cmd == "decompose":
        stdout.write(pauli.format_terms(pauli.decompose(read_operator(args.h), args.prune)))
    elif cmd == "propagate":
        _emit(operator_to_json(propagator(read_operator(args.h), args.dt)), args.out, stdout)
    elif cmd == "pulse":
        h = read_operator(args.h)
        k = qubit_count(h.shape[0])
        if len(args.psi0) != k:
            raise UsageError(f"--psi0 needs {k} bits for a {h.shape[0]}-dimensional operator")
        psi = evolution.pulse_evolve(h, args.profile, args.dt, basis_ket(args.psi0), args.steps)
        _emit(ket_to_json(psi), args.out, stdout)
    elif cmd == "stage":
        plan = evolution.StagePlan(args.n, _gamma(args), args.dt)
        _, composed = evolution.staged_copy(plan)
        _emit(operator_to_json(composed), args.out, stdout)
    elif cmd == "verify":
        if args.check == "copy":
            report = verify.verify_copying(
                read_operator(args.u), args.n, args.tol, args.strict_phases,
                spectators=not args.conditions_only,
            )
        elif args.check == "cnot":
            report = verify.verify_cnot_truth_table(read_operator(args.u), args.tol, args.strict_phases)
        else:
            report = verify.equal_up_to_global_phase(read_operator(args.a), read_operator(args.b), args.tol)
        stdout.write(report.to_json())
        return 0 if report.passed else 1
    elif cmd == "selftest":
        from .acceptance import run_all

        results = run_all(tol=args.tol)
        for r in results:
            stdout.write(r.line() + "\n")
        failed = sum(not r.passed for r in results)
        stdout.write(f"{len(results) - failed}/{len(results)} criteria passed\n")
        return 0 if failed == 0 else 1
    return 0


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        return _dispatch(args, stdout)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 2
    except (MalformedInput, DimMismatch, NotHermitian, NotUnitary, NotNormalized, ValueError, OSError) as exc:
        stderr.write(f"qcopy: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
