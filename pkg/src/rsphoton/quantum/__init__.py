"""Photon states, scalar products, generators and the commutator harness."""

from .commutators import (PacketState, commutator_check, default_pairs, default_states,
                          expected_commutator, generator, reports_to_json, run_suite)
from .operators import OPERATORS, apply_operator, apply_spin, hamiltonian_apply, spin_matrices
from .products import (SHEETS, KSpaceState, norm, normalized_mode, scalar_product_k,
                       scalar_product_modes, scalar_product_x)

__all__ = [
    "KSpaceState", "OPERATORS", "PacketState", "SHEETS", "apply_operator", "apply_spin",
    "commutator_check", "default_pairs", "default_states", "expected_commutator",
    "generator", "hamiltonian_apply", "norm", "normalized_mode", "reports_to_json",
    "run_suite", "scalar_product_k", "scalar_product_modes", "scalar_product_x",
    "spin_matrices",
]
