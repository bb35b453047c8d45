"""Generalised Gegenbauer functions, Riemann-Liouville calculus and Chebyshev
coefficients of singular functions, with error bounds and self-checks."""

from fracheb.bounds import (
    BoundSpec,
    BoundValue,
    bound_frac_coeff,
    bound_frac_trunc,
    bound_int_coeff,
    bound_int_trunc,
    bound_power_interior,
    bound_prior,
    bound_ratios,
)
from fracheb.cheb import (
    CoeffSeries,
    FracData,
    FracIndex,
    SingularFamily,
    chebyshev_series,
    coeff_asymptotic,
    coeff_exact,
    coeff_identity_frac,
    coeff_quadrature,
    measured_error,
    partial_sum,
    seminorm,
)
from fracheb.errors import (
    AccuracyError,
    DivergenceError,
    DomainError,
    FrachebError,
    InadmissibleBoundError,
    PoleError,
    UnsupportedCaseError,
)
from fracheb.ggf import GgfParams, ggf_endpoint, ggf_eval, kappa, kappa_hat, weighted_ggf
from fracheb.rl import RlSpec, ggf_frac_identity, rl_numeric, rl_power, rl_power_log
from fracheb.special import digamma, gamma_ratio, gegenbauer, hyp2f1, jacobi_p, ln_gamma, pochhammer

__version__ = "0.1.0"
