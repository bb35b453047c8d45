"""Upper bounds for Chebyshev coefficients and truncation errors.

Fractional-order bounds are scaled by a semi-norm ``U`` (see
:func:`fracheb.cheb.seminorm`); integer-order bounds by
``V_L = ||u^(m+1)||_L1`` or, for the two prior-art bounds, by the
Chebyshev-weighted ``V_T = ||u^(m+1)||_{L1_omega}``.

Preconditions that fail raise :class:`InadmissibleBoundError` instead of
returning an extrapolated number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from fracheb.errors import InadmissibleBoundError
from fracheb.special import gamma_ratio

__all__ = [
    "BOUND_KINDS",
    "BoundSpec",
    "BoundValue",
    "RatioRow",
    "bound_frac_coeff",
    "bound_frac_trunc",
    "bound_int_coeff",
    "bound_int_coeff_smalln",
    "bound_int_trunc",
    "bound_power_interior",
    "bound_prior",
    "bound_ratios",
    "evaluate_bound",
    "log_double_factorial",
]

BOUND_KINDS = (
    "frac_coeff_m0",
    "frac_coeff_m1plus",
    "frac_linf",
    "frac_l2",
    "int_coeff_odd",
    "int_coeff_even",
    "int_coeff_smalln",
    "int_coeff_unified",
    "int_linf",
    "int_linf_m0",
    "int_linf_overresolved",
    "trefethen",
    "majidian",
)


def log_double_factorial(k: int) -> float:
    """``ln((2k-1)!!)`` via ``Gamma(k+1/2) = sqrt(pi) (2k-1)!! / 2^k``; ``(-1)!! = 1``."""
    if k < 0:
        raise InadmissibleBoundError(f"double factorial index must be >= 0, got {k}")
    return math.lgamma(k + 0.5) + k * math.log(2.0) - 0.5 * math.log(math.pi)


def _check_scale(scale: float, name: str) -> None:
    if not scale >= 0:
        raise InadmissibleBoundError(f"{name} must be non-negative, got {scale!r}")


# ---------------------------------------------------------------------------
# Fractional order
# ---------------------------------------------------------------------------


def bound_frac_coeff(U: float, m: int, s: float, n: int) -> float:
    """Coefficient bound for ``u`` with semi-norm ``U = U^{m,s}_theta``.

    ``m = 0`` needs ``1/2 < s < 1`` and takes the larger of two Gamma-ratio
    terms; ``m >= 1`` accepts ``0 < s <= 1``.  Both need ``n >= m + s``.
    """
    _check_scale(U, "U")
    sigma = m + s
    if n < sigma:
        raise InadmissibleBoundError(f"need n >= m + s, got n={n}, m+s={sigma}")
    if m == 0:
        if not 0.5 < s < 1.0:
            raise InadmissibleBoundError(f"m = 0 needs s in (1/2, 1), got s={s}")
        first = gamma_ratio(0.0, 0.5 * (n - s + 1), 0.5 * (n + s + 1))
        second = 2.0 / math.sqrt(n * n - s * s + s) * gamma_ratio(0.0, 0.5 * (n - s) + 1, 0.5 * (n + s))
        return U / (2.0 ** (s - 1.0) * math.pi) * max(first, second)
    if m < 0 or not 0.0 < s <= 1.0:
        raise InadmissibleBoundError(f"need integer m >= 0 and s in (0, 1], got m={m}, s={s}")
    return U / (2.0 ** (sigma - 1.0) * math.pi) * gamma_ratio(0.0, 0.5 * (n - sigma + 1), 0.5 * (n + sigma + 1))


def bound_power_interior(alpha: float, theta: float, n: int) -> float:
    """Coefficient bound for ``|x - theta|^alpha`` (``alpha > -1/2``, ``n >= alpha + 1``).

    For ``alpha >= 0`` this is the ``m >= 1`` bound with ``U = 2 Gamma(alpha+1)``,
    which is attained at ``alpha = 1, theta = 0, n = 2``.
    """
    if alpha <= -0.5:
        raise InadmissibleBoundError(f"alpha must exceed -1/2, got {alpha}")
    if n < alpha + 1:
        raise InadmissibleBoundError(f"need n >= alpha + 1, got n={n}, alpha={alpha}")
    g = math.gamma(alpha + 1.0)
    lead = g / (2.0 ** (alpha - 1.0) * math.pi)
    first = gamma_ratio(0.0, 0.5 * (n - alpha), 0.5 * (n + alpha) + 1.0)
    if alpha >= 0:
        return lead * first
    second = 2.0 / math.sqrt(n * n - alpha * (alpha + 1.0)) * gamma_ratio(
        0.0, 0.5 * (n - alpha + 1.0), 0.5 * (n + alpha + 1.0)
    )
    return lead * (1.0 - theta * theta) ** (0.5 * alpha) * max(first, second)


def bound_frac_trunc(U: float, m: int, s: float, N: int, norm: str = "linf") -> float:
    """Truncation-error bound for ``pi_N u`` in ``linf`` or ``l2`` (Chebyshev-weighted).

    ``linf`` needs ``1 < m + s <= N + 1`` (the bound is singular at
    ``m + s = 1``); ``l2`` needs ``1/2 < m + s < N + 1``.
    """
    _check_scale(U, "U")
    sigma = m + s
    if norm == "linf":
        if not 1.0 < sigma <= N + 1:
            raise InadmissibleBoundError(f"L-infinity bound needs 1 < m+s <= N+1, got m+s={sigma}, N={N}")
        ratio = gamma_ratio(0.0, 0.5 * (N - sigma) + 1.0, 0.5 * (N + sigma))
        return U / (2.0 ** (sigma - 2.0) * (sigma - 1.0) * math.pi) * ratio
    if norm == "l2":
        if not 0.5 < sigma < N + 1:
            raise InadmissibleBoundError(f"L2 bound needs 1/2 < m+s < N+1, got m+s={sigma}, N={N}")
        ratio = gamma_ratio(0.0, N - sigma + 1.0, N + sigma)
        return math.sqrt(8.0 / ((2.0 * sigma - 1.0) * math.pi) * ratio) * U
    raise InadmissibleBoundError(f"norm must be 'linf' or 'l2', got {norm!r}")


# ---------------------------------------------------------------------------
# Integer order
# ---------------------------------------------------------------------------


def _odd_product(m: int, n: int) -> float:
    out = 1.0
    for j in range(m + 1):
        out /= n - m + 2 * j
    return out


def bound_int_coeff(m: int, V_L: float, n: int, form: str = "parity") -> float:
    """Coefficient bound for ``u`` in ``W^{m+1}`` with ``V_L = ||u^(m+1)||_L1``.

    ``form="parity"`` picks the sharper parity-specific bound (``n - m`` odd
    or even); ``"unified"`` gives the single product form valid for both.
    """
    _check_scale(V_L, "V_L")
    if m < 0 or n < m + 1:
        raise InadmissibleBoundError(f"need m >= 0 and n >= m + 1, got m={m}, n={n}")
    if form == "unified" or (n - m) % 2 == 1:
        if form not in ("parity", "unified"):
            raise InadmissibleBoundError(f"unknown form {form!r}")
        return 2.0 * V_L / math.pi * _odd_product(m, n)
    if form != "parity":
        raise InadmissibleBoundError(f"unknown form {form!r}")
    prod = 1.0
    for j in range(m):
        prod /= n - m + 2 * j + 1
    return 2.0 * V_L / (math.pi * math.sqrt(n * n - m * m)) * prod


def bound_int_coeff_smalln(n: int, norm_n: float, m: int | None = None) -> float:
    """``2 ||u^(n)||_L1 / (pi (2n-1)!!)``, valid for ``0 <= n <= m + 1``."""
    _check_scale(norm_n, "||u^(n)||")
    if n < 0 or (m is not None and n > m + 1):
        raise InadmissibleBoundError(f"small-n bound needs 0 <= n <= m + 1, got n={n}, m={m}")
    return 2.0 * norm_n / math.pi * math.exp(-log_double_factorial(n))


def bound_int_trunc(m: int, norms: Mapping[int, float], N: int) -> float:
    """L-infinity truncation bound for ``u`` in ``W^{m+1}``.

    ``norms[k]`` is ``||u^(k)||_L1``.  Three regimes: ``1 <= m <= N`` uses
    ``norms[m+1]``; ``m = 0`` gives ``norms[1]`` independent of ``N``; and
    ``m >= N + 1`` sums ``norms[N+1] .. norms[m+1]`` with double factorial
    weights.
    """
    if N < 1 or m < 0:
        raise InadmissibleBoundError(f"need N >= 1 and m >= 0, got N={N}, m={m}")

    def need(k):
        try:
            value = norms[k]
        except (KeyError, IndexError):
            raise InadmissibleBoundError(f"||u^({k})||_L1 is required") from None
        _check_scale(value, f"||u^({k})||")
        return value

    if m == 0:
        return need(1)
    if m <= N:
        prod = 1.0
        for j in range(1, m + 1):
            prod /= N - m + 2 * j - 1
        return 2.0 / (m * math.pi) * prod * need(m + 1)
    total = 0.0
    for k in range(N, m + 1):
        c = 2.0 if k == m else 1.0
        total += c * math.exp(-log_double_factorial(k + 1)) * need(k + 1)
    return 2.0 / math.pi * total


def bound_prior(kind: str, m: int, V_T: float, n: int) -> float:
    """Prior-art coefficient bounds with the Chebyshev-weighted scale ``V_T``.

    ``trefethen``: ``2 V_T / (pi n (n-1) ... (n-m))``;
    ``majidian``: ``(2 V_T / pi) prod_{j=0}^m 1/(n-m+2j)``.
    """
    _check_scale(V_T, "V_T")
    if m < 0 or n < m + 1:
        raise InadmissibleBoundError(f"need n >= m + 1, got m={m}, n={n}")
    if kind == "trefethen":
        prod = 1.0
        for j in range(m + 1):
            prod /= n - j
        return 2.0 * V_T / math.pi * prod
    if kind == "majidian":
        return 2.0 * V_T / math.pi * _odd_product(m, n)
    raise InadmissibleBoundError(f"kind must be 'trefethen' or 'majidian', got {kind!r}")


# ---------------------------------------------------------------------------
# Typed evaluation and ratio tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundSpec:
    """Which bound to evaluate, with its index and scale.

    ``scale`` is ``U`` for the fractional kinds, ``V_L`` or ``V_T`` for the
    integer coefficient kinds; truncation kinds read ``norms`` instead.
    """

    kind: str
    m: int
    s: float = 1.0
    scale: float = 0.0
    norms: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in BOUND_KINDS:
            raise InadmissibleBoundError(f"unknown bound kind {self.kind!r}")


@dataclass(frozen=True)
class BoundValue:
    spec: BoundSpec
    n: int
    value: float


def evaluate_bound(spec: BoundSpec, n: int) -> BoundValue:
    """Evaluate ``spec`` at coefficient index (or truncation degree) ``n``."""
    k = spec.kind
    if k in ("frac_coeff_m0", "frac_coeff_m1plus"):
        if (k == "frac_coeff_m0") != (spec.m == 0):
            raise InadmissibleBoundError(f"{k} does not match m={spec.m}")
        value = bound_frac_coeff(spec.scale, spec.m, spec.s, n)
    elif k in ("frac_linf", "frac_l2"):
        value = bound_frac_trunc(spec.scale, spec.m, spec.s, n, norm=k[5:])
    elif k in ("int_coeff_odd", "int_coeff_even"):
        parity = 1 if k == "int_coeff_odd" else 0
        if (n - spec.m) % 2 != parity:
            raise InadmissibleBoundError(f"{k} needs n - m {'odd' if parity else 'even'}")
        value = bound_int_coeff(spec.m, spec.scale, n)
    elif k == "int_coeff_unified":
        value = bound_int_coeff(spec.m, spec.scale, n, form="unified")
    elif k == "int_coeff_smalln":
        value = bound_int_coeff_smalln(n, spec.norms.get(n, spec.scale), spec.m)
    elif k in ("int_linf", "int_linf_m0", "int_linf_overresolved"):
        expected = {"int_linf_m0": spec.m == 0, "int_linf_overresolved": spec.m >= n + 1,
                    "int_linf": 1 <= spec.m <= n}[k]
        if not expected:
            raise InadmissibleBoundError(f"{k} does not apply to m={spec.m}, N={n}")
        value = bound_int_trunc(spec.m, spec.norms, n)
    else:
        value = bound_prior(k, spec.m, spec.scale, n)
    return BoundValue(spec, n, value)


@dataclass(frozen=True)
class RatioRow:
    n: int
    improved: float
    trefethen: float
    majidian: float

    @property
    def ratio1(self) -> float:
        return self.trefethen / self.improved

    @property
    def ratio2(self) -> float:
        return self.majidian / self.improved


def bound_ratios(theta: float, n_range) -> list[RatioRow]:
    """Prior-to-improved bound ratios for ``u = |x - theta|`` (``m = 1``).

    The improved bound is the parity-specific one with ``V_L = 2``.
    ``Ratio1`` uses the Trefethen bound with ``V_T`` replaced by the total
    variation of ``u'`` (also 2); ``Ratio2`` uses the Majidian bound with
    ``V_T = 2 / sqrt(1 - theta^2)``.
    """
    if not -1.0 < theta < 1.0:
        raise InadmissibleBoundError(f"theta must lie in (-1, 1), got {theta}")
    v_t = 2.0 / math.sqrt(1.0 - theta * theta)
    rows = []
    for n in n_range:
        rows.append(RatioRow(
            n,
            bound_int_coeff(1, 2.0, n),
            bound_prior("trefethen", 1, 2.0, n),
            bound_prior("majidian", 1, v_t, n),
        ))
    return rows
