"""Regulator-ladder propagators, toy filter and power counting."""

from ._core import (
    Contour,
    Error,
    PartialFractionDecomposition,
    born_series,
    claim_table,
    cutoff_probe,
    decompose,
    equal_time_anticommutator,
    g_f,
    gamma_matrices,
    kubo_commutator,
    minimal_regulators,
    propagator,
    propagator_oracle,
    recursion_residual,
    response,
    smoothness_order,
    sum_rule_residuals,
    superficial_degree,
    transfer_matrix,
    verify,
)

__all__ = [
    "Contour",
    "Error",
    "PartialFractionDecomposition",
    "born_series",
    "claim_table",
    "cutoff_probe",
    "decompose",
    "equal_time_anticommutator",
    "g_f",
    "gamma_matrices",
    "kubo_commutator",
    "minimal_regulators",
    "propagator",
    "propagator_oracle",
    "recursion_residual",
    "response",
    "smoothness_order",
    "sum_rule_residuals",
    "superficial_degree",
    "transfer_matrix",
    "verify",
]
