"""Endpoint error of the RK4 pulse integrator against the exact propagator."""
import argparse

import numpy as np

from qcopy.evolution import PROFILES, pulse_evolve
from qcopy.operators import basis_ket, propagator
from qcopy.synthesis import single_copy_hamiltonian

parser = argparse.ArgumentParser()
parser.add_argument("--gamma", type=float, default=0.0)
parser.add_argument("--steps", type=int, nargs="+", default=[200, 400, 800, 1600, 3200])
args = parser.parse_args()

h = single_copy_hamiltonian(args.gamma)
psi0 = basis_ket("10")
exact = propagator(h, 1.0) @ psi0

print(f"{'steps':>6} " + " ".join(f"{k:>12}" for k in PROFILES))
prev = None
for steps in args.steps:
    errs = [np.linalg.norm(pulse_evolve(h, k, 1.0, psi0, steps) - exact) for k in PROFILES]
    line = f"{steps:>6} " + " ".join(f"{e:12.3e}" for e in errs)
    if prev is not None:
        line += "   ratios " + " ".join(f"{p / e:6.2f}" for p, e in zip(prev, errs))
    print(line)
    prev = errs
