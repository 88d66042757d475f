"""
Fractional special functions, Jumarie derivatives, fractional Laplace rules
and the bound-state spectrum of the fractional Mie-type potential.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    DivisionByZero,
    DomainError,
    FracSpecError,
    NoRootError,
    NonConvergence,
    OverflowGuard,
    PoleError,
    SingularityError,
    TruncationWarning,
)
from .jumarie import GLConfig, GLResult, frac_deriv_power, gl_frac_deriv
from .laplace import (
    BranchParams,
    QuadratureConfig,
    laplace_numeric,
    ml_transform_pair,
    tau_factor,
)
from .specfun import (
    MLParams,
    SeriesControl,
    factorial_frac,
    frac_cos,
    frac_sin,
    gamma_real,
    hyp1f1_frac,
    ml_deriv_series,
    mittag_leffler,
)
from .spectrum import (
    KRoot,
    ModelParams,
    QuantumNumbers,
    RadialSample,
    SpectralSolution,
    closed_form_kstar_alpha1,
    energy,
    epsilon_from_quantization,
    gamma_alpha,
    nu_product,
    potential,
    q1,
    q2,
    radial_wavefunction,
    select_branch,
    solve_kstar,
    solve_state,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ConfigError",
    "ConvergenceError",
    "DivisionByZero",
    "DomainError",
    "FracSpecError",
    "NoRootError",
    "NonConvergence",
    "OverflowGuard",
    "PoleError",
    "SingularityError",
    "TruncationWarning",
    "GLConfig",
    "GLResult",
    "frac_deriv_power",
    "gl_frac_deriv",
    "BranchParams",
    "QuadratureConfig",
    "laplace_numeric",
    "ml_transform_pair",
    "tau_factor",
    "MLParams",
    "SeriesControl",
    "factorial_frac",
    "frac_cos",
    "frac_sin",
    "gamma_real",
    "hyp1f1_frac",
    "ml_deriv_series",
    "mittag_leffler",
    "KRoot",
    "ModelParams",
    "QuantumNumbers",
    "RadialSample",
    "SpectralSolution",
    "closed_form_kstar_alpha1",
    "energy",
    "epsilon_from_quantization",
    "gamma_alpha",
    "nu_product",
    "potential",
    "q1",
    "q2",
    "radial_wavefunction",
    "select_branch",
    "solve_kstar",
    "solve_state",
]
