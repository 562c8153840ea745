"""Quantum copying Hamiltonians: synthesis, propagation and verification."""
from .evolution import PulseProfile, StagePlan, pulse_evolve, staged_copy
from .operators import (
    adjoint,
    basis_index,
    basis_ket,
    frobenius_distance,
    hermitian_eig,
    propagator,
    tensor_product,
)
from .pauli import PauliTerm, decompose, materialize
from .synthesis import (
    GateSpec,
    branch_energies,
    cnot_hamiltonian,
    copy_hamiltonian_pauli,
    copy_hamiltonian_projector,
    exact_synthesis,
    paper_block,
    subspace_eigenphases,
    target_copy_unitary,
)
from .verify import (
    VerificationReport,
    equal_up_to_global_phase,
    verify_cnot_truth_table,
    verify_copying,
)

__version__ = "0.1.0"
