"""Wishart exponential families on homogeneous cones in matrix realization."""

from ._core import (
    ConeError,
    DualRealization,
    NotHomogeneousError,
    Structure,
    action,
    character,
    check_strange,
    cholesky,
    dual_action,
    dual_decompose,
    dualize,
    empirical_moments,
    fd_gradient,
    fd_jacobian,
    gindikin,
    grad_log_power_cone,
    grad_log_power_dual,
    hat_completion,
    in_cone,
    in_dual_cone,
    inverse_mean_Q,
    laplace_P,
    laplace_Q,
    lauritzen,
    load_structure,
    mean_Q,
    phi,
    phi_adjoint,
    phi_big,
    phi_reduced,
    phi_reduced_adjoint,
    power_cone,
    power_dual,
    preset,
    quadratic_map,
    run_fixtures,
    sample,
    structure_from_graph,
    structure_from_json,
    validate,
    variance_P,
    variance_P_via_dual,
    variance_Q,
)

__all__ = [
    "ConeError",
    "DualRealization",
    "NotHomogeneousError",
    "Structure",
    "action",
    "character",
    "check_strange",
    "cholesky",
    "dual_action",
    "dual_decompose",
    "dualize",
    "empirical_moments",
    "fd_gradient",
    "fd_jacobian",
    "gindikin",
    "grad_log_power_cone",
    "grad_log_power_dual",
    "hat_completion",
    "in_cone",
    "in_dual_cone",
    "inverse_mean_Q",
    "laplace_P",
    "laplace_Q",
    "lauritzen",
    "load_structure",
    "mean_Q",
    "phi",
    "phi_adjoint",
    "phi_big",
    "phi_reduced",
    "phi_reduced_adjoint",
    "power_cone",
    "power_dual",
    "preset",
    "quadratic_map",
    "run_fixtures",
    "sample",
    "structure_from_graph",
    "structure_from_json",
    "validate",
    "variance_P",
    "variance_P_via_dual",
    "variance_Q",
]
