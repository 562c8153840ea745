"""Print the copying Hamiltonians, their Pauli expansions and propagators.

    python scripts/reproduce_closed_forms.py --max-n 3 --gamma 0.7
"""
import argparse

import numpy as np

from qcopy import pauli, synthesis, verify
from qcopy.operators import propagator


def show(label, m):
    print(label)
    with np.printoptions(precision=4, suppress=True, linewidth=120):
        print(m)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=3)
    parser.add_argument("--gamma", type=float, default=0.0)
    args = parser.parse_args()

    for n in range(1, args.max_n + 1):
        h = synthesis.copy_hamiltonian_pauli(n, args.gamma)
        print(f"\n== n = {n}: {2 ** (n + 1)}-dimensional register")
        print(pauli.format_terms(pauli.decompose(h)), end="")
        rep = verify.verify_copying(propagator(h, 1.0), n)
        print(rep.summary())
        for k, v in rep.realized_phases.items():
            print(f"  {k} = {v.real:+.6f}{v.imag:+.6f}j")

    show("\nsingle-copy propagator:", propagator(synthesis.single_copy_hamiltonian(args.gamma), 1.0))
    for sign in (1, -1):
        u = propagator(synthesis.cnot_hamiltonian(sign), 1.0)
        show(f"\ncontrolled-NOT propagator, sign {sign:+d}:", u)
        print(verify.verify_cnot_truth_table(u, strict_phases=True).summary())


if __name__ == "__main__":
    main()
