"""Magnus-expansion dynamics of the driven three-level Lambda system."""

from ._lambdadyn import (
    ArgumentError,
    ConfigurationError,
    ConvergenceError,
    DimensionError,
    LambdaParams,
    ParseError,
    PreconditionError,
    choi_matrix,
    commensurate_period,
    cptp_check,
    density_validity,
    eig,
    expm,
    h_rwf,
    hamiltonian,
    lambda_eff,
    one_period_propagator,
    run_case,
    run_command,
    rwa_density_tpr,
    rwa_error,
    rwa_propagator_tpr,
    spectral_gap,
    table_case,
    table_case_names,
)

__all__ = [name for name in dir() if not name.startswith("_")]
