r"""Generalised Gegenbauer functions of fractional degree.

The right and left functions are

.. math::

    {}^{r}G_\nu^{(\lambda)}(x) = {}_2F_1(-\nu, \nu+2\lambda; \lambda+1/2; (1-x)/2),
    \qquad
    {}^{l}G_\nu^{(\lambda)}(x) = (-1)^{[\nu]}\, {}^{r}G_\nu^{(\lambda)}(-x).

Both reduce to the Gegenbauer polynomial :math:`G_n^{(\lambda)}` (normalised
by :math:`G_n(1) = 1`) when :math:`\nu = n` is an integer.

Evaluation uses the hypergeometric definition only at the two lowest degrees
:math:`\nu_0 = \nu - [\nu]` and :math:`\nu_0 + 1`; higher degrees follow from
the three-term degree recurrence, which is the same contiguous relation that
generates the polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fracheb.errors import DivergenceError, DomainError, UnsupportedCaseError
from fracheb.special import DEFAULT_TOL, gamma_product, gamma_ratio, hyp2f1

__all__ = [
    "EndpointBehavior",
    "GgfParams",
    "endpoint_limit",
    "ggf_at_zero",
    "ggf_derivative",
    "ggf_endpoint",
    "ggf_eval",
    "kappa",
    "kappa_hat",
    "weighted_ggf",
]

_SIDES = ("right", "left")


@dataclass(frozen=True)
class GgfParams:
    """Side, degree ``nu`` and parameter ``lam`` of a GGF evaluation."""

    side: str
    nu: float
    lam: float

    def __post_init__(self):
        if self.side not in _SIDES:
            raise DomainError(f"side must be 'right' or 'left', got {self.side!r}")
        if not (math.isfinite(self.nu) and self.nu >= 0):
            raise DomainError(f"degree nu must be >= 0, got {self.nu!r}")
        if not (math.isfinite(self.lam) and self.lam > -0.5):
            raise DomainError(f"lambda must exceed -1/2, got {self.lam!r}")

    @property
    def floor_nu(self) -> int:
        return math.floor(self.nu)

    @property
    def is_polynomial(self) -> bool:
        return self.nu == math.floor(self.nu)

    @property
    def left_sign(self) -> int:
        return -1 if self.floor_nu % 2 else 1


@dataclass(frozen=True)
class EndpointBehavior:
    """How a GGF behaves as ``x`` approaches an endpoint.

    ``finite``: ``coefficient`` is the limit value.
    ``log_divergent``: ``G(x) / ln(1 -+ x) -> coefficient``.
    ``algebraic_divergent``: ``((1 -+ x)/2)**exponent * G(x) -> coefficient``.
    """

    kind: str
    coefficient: float
    exponent: float = 0.0


def _right(nu: float, lam: float, x: np.ndarray, tol: float) -> np.ndarray:
    z = 0.5 * (1.0 - x)
    c = lam + 0.5
    if nu < 1.0:
        # also serves negative degrees in (-1, 0) for the derivative
        return hyp2f1(-nu, nu + 2.0 * lam, c, z, tol)
    k = math.floor(nu)
    nu0 = nu - k
    prev = hyp2f1(-nu0, nu0 + 2.0 * lam, c, z, tol)
    cur = hyp2f1(-(nu0 + 1.0), nu0 + 1.0 + 2.0 * lam, c, z, tol)
    mu = nu0 + 1.0
    for _ in range(k - 1):
        prev, cur = cur, (2.0 * (mu + lam) * x * cur - mu * prev) / (mu + 2.0 * lam)
        mu += 1.0
    return cur


def ggf_eval(p: GgfParams, x, tol: float = DEFAULT_TOL):
    """Evaluate the right or left GGF at ``x`` (scalar or array in ``[-1, 1]``).

    At an endpoint where the function is unbounded a :class:`DivergenceError`
    is raised; see :func:`ggf_endpoint` for the limiting behaviour.
    """
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(xa) > 1.0) or np.any(~np.isfinite(xa)):
        raise DomainError("x must lie in [-1, 1]")
    if p.side == "right":
        out = _right(p.nu, p.lam, xa, tol)
    else:
        out = p.left_sign * _right(p.nu, p.lam, -xa, tol)
    out = np.asarray(out, dtype=float)
    return float(out[0]) if scalar else out


def ggf_at_zero(p: GgfParams) -> float:
    r"""Closed-form value of :math:`{}^{r}G_\nu^{(\lambda)}(0)`, or the left one."""
    nu, lam = p.nu, p.lam
    val = math.sin(0.5 * math.pi * (nu + 1.0)) * gamma_product(
        (lam + 0.5, 0.5 * nu + 0.5), (0.5 * nu + lam + 0.5,)
    ) / math.sqrt(math.pi)
    return val if p.side == "right" else p.left_sign * val


def _singular_end(p: GgfParams) -> int:
    return -1 if p.side == "right" else 1


def ggf_endpoint(p: GgfParams, at: int) -> EndpointBehavior:
    """Classify the behaviour of the GGF at ``x = at`` (``+1`` or ``-1``)."""
    if at not in (1, -1):
        raise DomainError(f"endpoint must be +1 or -1, got {at!r}")
    nu, lam = p.nu, p.lam
    side_sign = 1 if p.side == "right" else p.left_sign
    if at != _singular_end(p):
        return EndpointBehavior("finite", float(side_sign))
    if p.is_polynomial:
        # right: (-1)^n at x=-1; left: (-1)^n * (-1)^n at x=+1
        val = (-1) ** int(nu) if p.side == "right" else 1
        return EndpointBehavior("finite", float(val))
    if lam < 0.5:
        # inside the set nu+lam-1/2 in N0 the cosine vanishes and so does the
        # Gauss sum, through the pole of Gamma(1/2-nu-lam)
        k = nu + lam - 0.5
        if k >= 0 and k == math.floor(k):
            val = 0.0
        else:
            val = math.cos((nu + lam) * math.pi) / math.cos(lam * math.pi)
        return EndpointBehavior("finite", side_sign * val)
    if lam == 0.5:
        return EndpointBehavior("log_divergent", side_sign * math.sin(nu * math.pi) / math.pi)
    coef = -math.sin(nu * math.pi) / math.pi * gamma_product(
        (lam - 0.5, lam + 0.5, nu + 1.0), (nu + 2.0 * lam,)
    )
    return EndpointBehavior("algebraic_divergent", side_sign * coef, lam - 0.5)


def endpoint_limit(p: GgfParams, at: int, h: float = 1e-10, tol: float = DEFAULT_TOL) -> float:
    """Estimate the endpoint value from samples at distance ``h, 2h, 4h``.

    The known leading correction exponents (``1`` and, on the singular side
    for ``lam < 1/2``, ``1/2 - lam``) are eliminated by Richardson
    extrapolation.  Only meaningful where :func:`ggf_endpoint` is finite.
    """
    beh = ggf_endpoint(p, at)
    if beh.kind != "finite":
        raise DivergenceError(f"GGF is {beh.kind} at x={at}")
    powers = [1.0]
    if at == _singular_end(p) and not p.is_polynomial and 0.5 - p.lam != 1.0:
        powers.insert(0, 0.5 - p.lam)
    hs = h * 2.0 ** np.arange(len(powers) + 1)
    xs = at * (1.0 - hs)
    vals = ggf_eval(p, xs, tol)
    mat = np.column_stack([np.ones_like(hs)] + [hs**q for q in powers])
    return float(np.linalg.solve(mat, vals)[0])


def kappa(nu: float, lam: float) -> float:
    """Uniform bound of ``(1-x^2)^(lam-1/2) |G|`` on ``[-1, 1]`` for ``lam >= 1``."""
    if lam < 1.0:
        raise DomainError(f"kappa needs lambda >= 1, got {lam!r}")
    if nu < 0:
        raise DomainError(f"kappa needs nu >= 0, got {nu!r}")
    first = math.cos(0.5 * math.pi * nu) ** 2 * gamma_ratio(0.5 * (nu + 1.0), 0.0, lam) ** 2
    second = (
        4.0 * math.sin(0.5 * math.pi * nu) ** 2 / (2.0 * lam - 1.0 + nu * (nu + 2.0 * lam))
        * gamma_ratio(0.5 * nu, 1.0, lam) ** 2
    )
    return gamma_product((lam + 0.5,)) / math.sqrt(math.pi) * math.sqrt(first + second)


def kappa_hat(nu: float, lam: float) -> float:
    """Uniform bound of ``(1-x^2)^(lam/2) |G|`` on ``[-1, 1]`` for ``0 < lam < 1``."""
    if not 0.0 < lam < 1.0:
        raise DomainError(f"kappa_hat needs 0 < lambda < 1, got {lam!r}")
    if nu < 0:
        raise DomainError(f"kappa_hat needs nu >= 0, got {nu!r}")
    first = math.cos(0.5 * math.pi * nu) ** 2 * gamma_ratio(0.5 * (nu + 1.0), 0.0, lam) ** 2
    second = (
        4.0 * math.sin(0.5 * math.pi * nu) ** 2 / (nu * nu + 2.0 * lam * nu + lam)
        * gamma_ratio(0.5 * nu, 1.0, lam) ** 2
    )
    return gamma_product((lam + 0.5,)) / math.sqrt(math.pi) * math.sqrt(first + second)


def _weight_exponent(lam: float, weight: str) -> float:
    if weight == "gegenbauer_w_lambda":
        return lam - 0.5
    if weight == "half_power":
        return 0.5 * lam
    raise DomainError(f"unknown weight {weight!r}")


def _weighted_limit(p: GgfParams, at: int, e: float) -> float:
    # weight = (1-x^2)^e ~ 2^(2e) t^e with t = (1 -+ x)/2 -> 0
    beh = ggf_endpoint(p, at)
    if beh.kind == "finite":
        if e > 0:
            return 0.0
        if e == 0:
            return beh.coefficient
        if beh.coefficient == 0.0:
            raise UnsupportedCaseError("indeterminate 0*inf weighted endpoint limit")
        raise DivergenceError("weighted GGF is unbounded at this endpoint")
    if beh.kind == "log_divergent":
        if e > 0:
            return 0.0
        raise DivergenceError("weighted GGF is unbounded at this endpoint")
    if e > beh.exponent:
        return 0.0
    if e == beh.exponent:
        return 2.0 ** (2.0 * e) * beh.coefficient
    raise DivergenceError("weighted GGF is unbounded at this endpoint")


def weighted_ggf(p: GgfParams, x, weight: str = "gegenbauer_w_lambda", tol: float = DEFAULT_TOL):
    """Return ``w(x) * G(x)`` with ``w = (1-x^2)^(lam-1/2)`` or ``(1-x^2)^(lam/2)``.

    Endpoint values are the limits implied by :func:`ggf_endpoint`.
    """
    e = _weight_exponent(p.lam, weight)
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xa)
    inner = np.abs(xa) < 1.0
    if np.any(inner):
        xi = xa[inner]
        out[inner] = (1.0 - xi * xi) ** e * ggf_eval(p, xi, tol)
    for at in (-1, 1):
        hit = xa == at
        if np.any(hit):
            out[hit] = _weighted_limit(p, at, e)
    return float(out[0]) if scalar else out


def ggf_derivative(p: GgfParams, x, tol: float = DEFAULT_TOL):
    r"""Derivative in ``x`` via :math:`\frac{d}{dx}{}^{r}G_\nu^{(\lambda)} =
    \frac{\nu(\nu+2\lambda)}{2\lambda+1}{}^{r}G_{\nu-1}^{(\lambda+1)}`.

    For ``nu < 1`` the shifted degree is negative and the differentiated
    hypergeometric series is evaluated directly.
    """
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    nu, lam = p.nu, p.lam
    factor = nu * (nu + 2.0 * lam) / (2.0 * lam + 1.0)
    if factor == 0.0:
        out = np.zeros_like(xa)
    elif p.side == "right":
        out = factor * _right(nu - 1.0, lam + 1.0, xa, tol)
    else:
        out = -p.left_sign * factor * _right(nu - 1.0, lam + 1.0, -xa, tol)
    out = np.asarray(out, dtype=float)
    return float(out[0]) if scalar else out
