"""Fractional Laplacian kernels, Riesz potentials and Holder-exponent experiments."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DataError,
    DomainError,
    ExponentReport,
    FitResult,
    KernelBranch,
    KernelSpec,
    RegularityCase,
    bessel_j,
    bootstrap_iterations,
    fit_holder_exponent,
    frac_laplacian_power,
    gamma,
    green_kernel,
    hyp2f1,
    phi,
    phi_direct,
    phi_hypergeometric,
    predict_exponent,
    riesz_kernel,
    run_scenario,
    scaling_constant,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DataError",
    "DomainError",
    "ExponentReport",
    "FitResult",
    "KernelBranch",
    "KernelSpec",
    "RegularityCase",
    "bessel_j",
    "bootstrap_iterations",
    "fit_holder_exponent",
    "frac_laplacian_power",
    "gamma",
    "green_kernel",
    "hyp2f1",
    "phi",
    "phi_direct",
    "phi_hypergeometric",
    "predict_exponent",
    "riesz_kernel",
    "run_scenario",
    "scaling_constant",
]
