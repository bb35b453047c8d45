r"""Chebyshev expansion coefficients of functions with algebraic singularities.

Coefficients follow the convention

.. math::

    \hat u_n = \frac{2}{\pi}\int_0^\pi u(\cos\varphi)\cos(n\varphi)\,d\varphi,
    \qquad
    \pi_N u = {\sum_{n=0}^{N}}' \hat u_n T_n,

where the prime halves the ``n = 0`` term.  Five families are supported:
``|x-t|^a``, ``|x-t|^a ln|x-t|``, ``(1+-x)^a``, ``(1+-x)^a ln(1+-x)`` and
``(1+-x)^a g(x)`` for a smooth ``g`` given by Taylor coefficients at the
singular end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from fracheb._quad import adaptive_gauss
from fracheb.errors import DivergenceError, DomainError, UnsupportedCaseError
from fracheb.ggf import GgfParams, ggf_eval, weighted_ggf
from fracheb.rl import RlSpec, rl_power, rl_power_log
from fracheb.special import _digamma_any, _is_nonpos_int, gamma_product, gamma_ratio

__all__ = [
    "FAMILY_TAGS",
    "SIGN_CORRECTIONS",
    "CalibrationRow",
    "CoeffSeries",
    "FracData",
    "FracIndex",
    "SingularFamily",
    "calibrate_signs",
    "chebyshev_series",
    "coeff_asymptotic",
    "coeff_displayed",
    "coeff_exact",
    "coeff_identity_frac",
    "coeff_quadrature",
    "frac_data",
    "measured_error",
    "partial_sum",
    "seminorm",
]

FAMILY_TAGS = (
    "power_interior",
    "power_log_interior",
    "power_endpoint",
    "power_log_endpoint",
    "power_times_smooth",
)

# Taylor terms of g used by the power-times-smooth closed form.
SMOOTH_TERMS = 13
SMOOTH_CUTOFF = 1e-16


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularFamily:
    """A singular function from one of the supported families.

    Build instances with the class-method constructors, e.g.
    ``SingularFamily.power_interior(1.5, 0.3)``.
    """

    tag: str
    alpha: float
    theta: float | None = None
    end: int | None = None
    taylor: tuple[float, ...] = ()

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise DomainError(f"unknown family {self.tag!r}")
        if self.tag.endswith("interior"):
            if self.theta is None or not -1.0 < self.theta < 1.0:
                raise DomainError(f"interior families need theta in (-1, 1), got {self.theta!r}")
        elif self.end not in (1, -1):
            raise DomainError(f"endpoint families need end = +1 or -1, got {self.end!r}")
        if self.tag == "power_log_interior":
            if self.alpha < 0:
                raise DomainError(f"power_log_interior needs alpha >= 0, got {self.alpha!r}")
        elif self.alpha <= -0.5:
            raise DomainError(f"alpha must exceed -1/2, got {self.alpha!r}")
        if self.tag == "power_times_smooth" and not self.taylor:
            raise DomainError("power_times_smooth needs at least one Taylor coefficient")

    @classmethod
    def power_interior(cls, alpha, theta):
        return cls("power_interior", float(alpha), theta=float(theta))

    @classmethod
    def power_log_interior(cls, alpha, theta):
        return cls("power_log_interior", float(alpha), theta=float(theta))

    @classmethod
    def power_endpoint(cls, alpha, end=-1):
        return cls("power_endpoint", float(alpha), end=int(end))

    @classmethod
    def power_log_endpoint(cls, alpha, end=-1):
        return cls("power_log_endpoint", float(alpha), end=int(end))

    @classmethod
    def power_times_smooth(cls, alpha, end, taylor):
        return cls("power_times_smooth", float(alpha), end=int(end), taylor=tuple(float(t) for t in taylor))

    @property
    def singular_point(self) -> float:
        return self.theta if self.theta is not None else float(self.end)

    @property
    def has_log(self) -> bool:
        return "log" in self.tag

    def distance(self, x):
        x = np.asarray(x, dtype=float)
        if self.theta is not None:
            return np.abs(x - self.theta)
        return 1.0 + x if self.end == -1 else 1.0 - x

    def __call__(self, x):
        return self.from_distance(self.distance(x), x)

    def from_distance(self, d, x):
        """Evaluate given the distance ``d`` to the singular point (and ``x`` itself)."""
        d = np.asarray(d, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = d**self.alpha
            if self.has_log:
                val = np.where(d > 0, val * np.log(np.where(d > 0, d, 1.0)), 0.0)
        if self.tag == "power_times_smooth":
            x = np.asarray(x, dtype=float)
            val = val * np.polynomial.polynomial.polyval(x - self.end, self.taylor)
        return val


@dataclass(frozen=True)
class FracIndex:
    """Fractional regularity index ``sigma = m + s`` about the point ``theta``."""

    m: int
    s: float
    theta: float = 0.0

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise DomainError(f"m must be a non-negative integer, got {self.m!r}")
        if not 0.0 < self.s <= 1.0:
            raise DomainError(f"s must lie in (0, 1], got {self.s!r}")
        if not -1.0 <= self.theta <= 1.0:
            raise DomainError(f"theta must lie in [-1, 1], got {self.theta!r}")

    @property
    def sigma(self) -> float:
        return self.m + self.s


@dataclass(frozen=True)
class CoeffSeries:
    """Chebyshev coefficients ``values[n]`` with per-index provenance.

    Partial sums always halve the first term.
    """

    values: np.ndarray
    provenance: tuple[str, ...]
    first_term_halved: bool = True

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    @property
    def method(self) -> str:
        kinds = set(self.provenance)
        return kinds.pop() if len(kinds) == 1 else "mixed"


@dataclass
class FracData:
    """Side-wise RL data of ``u^(m)`` about ``theta``.

    ``d_left``/``d_right`` evaluate the order-``s`` RL derivatives on
    ``(-1, theta)`` and ``(theta, 1)`` (``None`` when identically zero);
    ``c_left``/``c_right`` are the limits of the ``(1-s)``-integrals at
    ``theta``.
    """

    m: int
    s: float
    theta: float
    d_left: Callable | None = None
    d_right: Callable | None = None
    c_left: float = 0.0
    c_right: float = 0.0

    @property
    def sigma(self) -> float:
        return self.m + self.s


# ---------------------------------------------------------------------------
# Quadrature oracle
# ---------------------------------------------------------------------------


GRADING_POWER = 4


def _grading_power(f) -> int:
    # make the graded integrand vanish at least linearly at the cut
    if not isinstance(f, SingularFamily) or f.alpha >= 0:
        return GRADING_POWER
    # the singularity is |phi - phi*|^alpha inside, |phi - phi*|^(2 alpha) at the ends
    beta = f.alpha if f.theta is not None else 2.0 * f.alpha
    return max(GRADING_POWER, math.ceil(2.0 / (beta + 1.0)))


def coeff_quadrature(f, n: int, nodes: int | None = None, singular_points=(), tol: float = 1e-13) -> float:
    """Compute a coefficient by adaptive Gauss-Legendre quadrature in ``phi``.

    ``[0, pi]`` is cut at ``arccos`` of every singular point and each piece is
    halved; on every half the nodes are graded towards the cut by
    ``phi = phi* +- L t^q`` (``q = 4``, larger for negative exponents).  For a :class:`SingularFamily` the distance to
    the singular point is computed from the offset ``phi - phi*`` so that no
    cancellation occurs next to it.  Each half starts with enough panels for
    ``nodes >= 8(n+1)`` points in total.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    points = list(singular_points)
    if isinstance(f, SingularFamily):
        points.append(f.singular_point)
    nodes = max(nodes or 0, 8 * (n + 1))
    cuts = sorted({0.0, math.pi, *(math.acos(t) for t in points if -1.0 < t < 1.0)})
    halves = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        mid = 0.5 * (a + b)
        halves += [(a, mid - a), (b, mid - b)]
    panels = max(1, math.ceil(nodes / 20 / len(halves)))
    q = _grading_power(f)

    def piece(anchor, length):
        ca = math.cos(anchor)
        sa = 0.0 if anchor in (0.0, math.pi) else math.sin(anchor)
        # at the singular cut itself the offset cos(phi*) - c is zero exactly
        base = 0.0
        if isinstance(f, SingularFamily) and abs(ca - f.singular_point) > 1e-12:
            base = ca - f.singular_point

        def integrand(t):
            delta = length * t**q
            phi = anchor + delta
            x = np.cos(phi)
            if isinstance(f, SingularFamily):
                sh = np.sin(0.5 * delta)
                d = np.abs(base - 2.0 * ca * sh * sh - sa * np.sin(delta))
                val = f.from_distance(d, x)
            else:
                val = f(x)
            return val * np.cos(n * phi) * (q * abs(length)) * t ** (q - 1)

        return integrand

    total = 0.0
    share = tol / len(halves)
    for anchor, length in halves:
        total += adaptive_gauss(piece(anchor, length), 0.0, 1.0, tol=share, initial_panels=panels)
    return 2.0 / math.pi * total


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _endpoint_power(beta: float, n: int) -> float:
    # coefficient of (1+x)^beta
    if n < beta + 1:
        return 2.0 ** (beta + 1.0) * gamma_product(
            (beta + 1.0, beta + 0.5), (beta - n + 1.0, beta + n + 1.0)
        ) / math.sqrt(math.pi)
    return (
        (-1) ** (n + 1) * math.sin(math.pi * beta) * gamma_product((2.0 * beta + 1.0,))
        / (2.0 ** (beta - 1.0) * math.pi) * gamma_ratio(n, -beta, beta + 1.0)
    )


def _endpoint_power_log(alpha: float, n: int) -> float:
    # coefficient of (1+x)^alpha ln(1+x), the alpha-derivative of the above
    if n < alpha + 1:
        base = _endpoint_power(alpha, n)
        return base * (
            math.log(2.0) + _digamma_any(alpha + 1.0) + _digamma_any(alpha + 0.5)
            - _digamma_any(alpha - n + 1.0) - _digamma_any(alpha + n + 1.0)
        )
    pref = (
        (-1) ** (n + 1) * gamma_product((2.0 * alpha + 1.0,)) / (math.pi * 2.0 ** (alpha - 1.0))
        * gamma_ratio(n, -alpha, alpha + 1.0)
    )
    brace = math.pi * math.cos(alpha * math.pi) + math.sin(alpha * math.pi) * (
        2.0 * _digamma_any(2.0 * alpha + 1.0) - math.log(2.0)
        - _digamma_any(n + alpha + 1.0) - _digamma_any(n - alpha)
    )
    return pref * brace


def _theta0_ratio(alpha: float, k: int) -> float:
    if _is_nonpos_int(k - 0.5 * alpha):
        raise UnsupportedCaseError(
            f"closed form has a Gamma pole at k - alpha/2 = {k - 0.5 * alpha:g} (alpha an even integer >= 2k)"
        )
    return gamma_ratio(k, -0.5 * alpha, 0.5 * alpha + 1.0)


def _power_interior_theta0(alpha: float, n: int) -> float:
    if n % 2:
        return 0.0
    k = n // 2
    if alpha == math.floor(alpha) and int(alpha) % 2 == 0:
        # |x|^alpha is then the polynomial x^alpha
        if n > alpha:
            return 0.0
        return 2.0 ** (1.0 - alpha) * math.comb(int(alpha), int(alpha - n) // 2)
    return (
        (-1) ** (k + 1) * math.sin(0.5 * alpha * math.pi) * gamma_product((alpha + 1.0,))
        / (2.0 ** (alpha - 1.0) * math.pi) * _theta0_ratio(alpha, k)
    )


def _power_log_interior_theta0(alpha: float, n: int) -> float:
    if n % 2:
        return 0.0
    k = n // 2
    ratio = _theta0_ratio(alpha, k)
    brace = math.pi * math.cos(0.5 * alpha * math.pi) + math.sin(0.5 * alpha * math.pi) * (
        2.0 * _digamma_any(alpha + 1.0) - 2.0 * math.log(2.0)
        - _digamma_any(k - 0.5 * alpha) - _digamma_any(k + 0.5 * alpha + 1.0)
    )
    return (-1) ** (k + 1) * gamma_product((alpha + 1.0,)) / (2.0**alpha * math.pi) * ratio * brace


def _power_interior_general(alpha: float, theta: float, n: int, sign_exponent: int) -> float:
    if n < alpha + 1:
        raise UnsupportedCaseError(f"closed form needs n >= alpha + 1 (n={n}, alpha={alpha})")
    nu, lam = n - alpha - 1.0, alpha + 1.0
    right = ggf_eval(GgfParams("right", nu, lam), theta)
    left = ggf_eval(GgfParams("left", nu, lam), theta)
    pref = gamma_product((alpha + 1.0,), (alpha + 1.5,)) / (2.0**alpha * math.sqrt(math.pi))
    return pref * (right - (-1) ** sign_exponent * left) * (1.0 - theta * theta) ** (alpha + 0.5)


def _smooth_sum(fam: SingularFamily, n: int, term) -> float:
    total = 0.0
    for ell, g in enumerate(fam.taylor[:SMOOTH_TERMS]):
        if g == 0.0:
            continue
        # (x - 1)^l = (-1)^l (1 - x)^l at the right end
        sgn = (-1) ** ell if fam.end == 1 else 1
        piece = sgn * g * term(fam.alpha + ell, n)
        total += piece
        if ell > 0 and abs(piece) < SMOOTH_CUTOFF * max(abs(total), 1e-300):
            break
    return total


def coeff_exact(fam: SingularFamily, n: int) -> float:
    """Closed-form coefficient ``u_n`` of ``fam``.

    Raises :class:`UnsupportedCaseError` outside the validity range of the
    formula (e.g. interior families at ``theta != 0`` with ``n < alpha + 1``).
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    a = fam.alpha
    if fam.tag == "power_interior":
        if fam.theta == 0.0:
            return _power_interior_theta0(a, n)
        return _power_interior_general(a, fam.theta, n, math.ceil(a))
    if fam.tag == "power_log_interior":
        if fam.theta != 0.0:
            raise UnsupportedCaseError("the log-interior closed form is available for theta = 0 only")
        return _power_log_interior_theta0(a, n)
    parity = (-1) ** n if fam.end == 1 else 1
    if fam.tag == "power_endpoint":
        return parity * _endpoint_power(a, n)
    if fam.tag == "power_log_endpoint":
        return parity * _endpoint_power_log(a, n)
    return parity * _smooth_sum(fam, n, _endpoint_power)


def coeff_displayed(fam: SingularFamily, n: int) -> float:
    """The closed forms exactly as customarily printed, kept for calibration.

    These differ from :func:`coeff_exact` in sign (interior power family) or
    in a constant factor (interior log family); the endpoint families agree.
    """
    a = fam.alpha
    if fam.tag == "power_interior":
        if fam.theta == 0.0:
            return -_power_interior_theta0(a, n)
        return _power_interior_general(a, fam.theta, n, math.floor(a))
    if fam.tag == "power_log_interior":
        if fam.theta != 0.0:
            raise UnsupportedCaseError("the log-interior closed form is available for theta = 0 only")
        if n % 2:
            return 0.0
        k = n // 2
        return 4.0 * (-1) ** (k + 1) * _power_log_interior_theta0(a, n)
    return coeff_exact(fam, n)


def coeff_asymptotic(fam: SingularFamily, n: int) -> float:
    """Leading-order large-``n`` approximation of the coefficient."""
    if n < 1:
        raise DomainError("asymptotic forms need n >= 1")
    a = fam.alpha
    if fam.tag in ("power_interior", "power_log_interior"):
        if fam.theta != 0.0:
            raise UnsupportedCaseError("interior asymptotics are provided for theta = 0 only")
        if n % 2:
            return 0.0
        k = n // 2
        lead = (-1) ** (k + 1) * gamma_product((a + 1.0,)) * k ** (-a - 1.0) / math.pi
        if fam.tag == "power_interior":
            return lead * math.sin(0.5 * a * math.pi) / 2.0 ** (a - 1.0)
        brace = math.pi * math.cos(0.5 * a * math.pi) + math.sin(0.5 * a * math.pi) * (
            2.0 * _digamma_any(a + 1.0) - 2.0 * math.log(2.0) - 2.0 * math.log(k)
        )
        return lead / 2.0**a * brace
    parity = (-1) ** n if fam.end == 1 else 1
    lead = (-1) ** (n + 1) * gamma_product((2.0 * a + 1.0,)) / (2.0 ** (a - 1.0) * math.pi) * n ** (-2.0 * a - 1.0)
    if fam.tag == "power_endpoint":
        return parity * lead * math.sin(math.pi * a)
    if fam.tag == "power_log_endpoint":
        brace = math.pi * math.cos(a * math.pi) + math.sin(a * math.pi) * (
            2.0 * _digamma_any(2.0 * a + 1.0) - math.log(2.0) - 2.0 * math.log(n)
        )
        return parity * lead * brace
    return parity * lead * math.sin(math.pi * a) * fam.taylor[0]


# ---------------------------------------------------------------------------
# Sign calibration
# ---------------------------------------------------------------------------

SIGN_CORRECTIONS = {
    "power_interior": "printed factor (-1)^[alpha] replaced by (-1)^ceil(alpha); "
                      "theta = 0 form: printed (-1)^k replaced by (-1)^(k+1)",
    "power_log_interior": "printed prefactor Gamma(alpha+1)/(2^(alpha-2) pi) replaced by "
                          "(-1)^(k+1) Gamma(alpha+1)/(2^alpha pi)",
    "power_endpoint": "none",
    "power_log_endpoint": "none",
    "power_times_smooth": "none",
}


@dataclass(frozen=True)
class CalibrationRow:
    family: str
    params: str
    n: int
    displayed: float
    corrected: float
    quadrature: float

    @property
    def verdict(self) -> str:
        scale = max(abs(self.quadrature), 1e-14)
        if abs(self.displayed - self.quadrature) <= 1e-8 * scale:
            return "agrees"
        if abs(self.displayed + self.quadrature) <= 1e-8 * scale:
            return "opposite sign"
        return "differs"


def _calibration_cases():
    return [
        SingularFamily.power_interior(1.0, 0.0),
        SingularFamily.power_interior(0.5, 0.0),
        SingularFamily.power_interior(0.5, 0.3),
        SingularFamily.power_log_interior(0.5, 0.0),
        SingularFamily.power_endpoint(0.5, -1),
        SingularFamily.power_log_endpoint(0.5, -1),
        SingularFamily.power_times_smooth(0.5, -1, (1.0, 0.5, -0.25)),
    ]


def _describe(fam: SingularFamily) -> str:
    where = f"theta={fam.theta:g}" if fam.theta is not None else f"end={fam.end:+d}"
    return f"alpha={fam.alpha:g}, {where}"


def calibrate_signs(families=None, n_values=(2, 3, 4)) -> list[CalibrationRow]:
    """Compare printed and corrected closed forms with the quadrature oracle."""
    rows = []
    for fam in families or _calibration_cases():
        for n in n_values:
            try:
                shown = coeff_displayed(fam, n)
                fixed = coeff_exact(fam, n)
            except UnsupportedCaseError:
                continue
            quad = coeff_quadrature(fam, n)
            if abs(quad) < 1e-12 and abs(fixed) < 1e-12:
                continue
            rows.append(CalibrationRow(fam.tag, _describe(fam), n, shown, fixed, quad))
    return rows


# ---------------------------------------------------------------------------
# Series, partial sums and errors
# ---------------------------------------------------------------------------


def chebyshev_series(fam, N: int, method: str = "exact") -> CoeffSeries:
    """Coefficients ``0..N`` of ``fam``.

    ``method`` is ``exact``, ``quadrature``, ``asymptotic`` or ``auto``
    (closed form where valid, quadrature otherwise).  A plain callable is
    accepted with the quadrature method.
    """
    vals = np.empty(N + 1)
    prov = []
    for n in range(N + 1):
        if method == "quadrature" or not isinstance(fam, SingularFamily):
            vals[n] = coeff_quadrature(fam, n)
            prov.append("quadrature")
        elif method == "asymptotic":
            vals[n] = coeff_asymptotic(fam, n) if n > 0 else coeff_quadrature(fam, 0)
            prov.append("asymptotic" if n > 0 else "quadrature")
        elif method in ("exact", "auto"):
            try:
                vals[n] = coeff_exact(fam, n)
                prov.append("exact")
            except UnsupportedCaseError:
                if method == "exact":
                    raise
                vals[n] = coeff_quadrature(fam, n)
                prov.append("quadrature")
        else:
            raise DomainError(f"unknown method {method!r}")
    return CoeffSeries(vals, tuple(prov))


def partial_sum(series, N: int, x):
    """Evaluate ``sum' u_n T_n(x)`` for ``n <= N`` by Clenshaw's recurrence."""
    coef = np.asarray(series.values if isinstance(series, CoeffSeries) else series, dtype=float)
    if N < 0 or N >= len(coef):
        raise DomainError(f"coefficients 0..{N} are required, {len(coef)} available")
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for c in coef[N:0:-1]:
        b1, b2 = 2.0 * x * b1 - b2 + c, b1
    out = x * b1 - b2 + 0.5 * coef[0]
    return float(out) if out.ndim == 0 else out


def error_grid(size: int = 4096, extra=()) -> np.ndarray:
    """Chebyshev-clustered grid including both endpoints and any ``extra`` points."""
    k = np.arange(size)
    pts = np.cos(np.pi * (k + 0.5) / size)
    return np.unique(np.concatenate([pts, [-1.0, 1.0], np.asarray(extra, dtype=float)]))


def measured_error(f, series, N: int, norm: str = "sup_grid", grid_size: int = 4096,
                   extra_points=(), method: str = "quadrature", tol: float = 1e-14) -> float:
    """Measured truncation error of ``pi_N f``.

    ``sup_grid`` takes the maximum over :func:`error_grid`.  ``l2_chebweight``
    is the Chebyshev-weighted L2 norm, computed by direct quadrature
    (``method="quadrature"``) or from the coefficient tail of a longer
    ``series`` (``method="parseval"``).
    """
    if isinstance(f, SingularFamily):
        extra_points = tuple(extra_points) + (f.singular_point,)
    if norm == "sup_grid":
        xs = error_grid(grid_size, [p for p in extra_points if -1.0 <= p <= 1.0])
        return float(np.max(np.abs(f(xs) - partial_sum(series, N, xs))))
    if norm != "l2_chebweight":
        raise DomainError(f"unknown norm {norm!r}")
    if method == "parseval":
        tail = np.asarray(series.values if isinstance(series, CoeffSeries) else series)[N + 1:]
        return float(math.sqrt(0.5 * math.pi * np.sum(tail**2)))
    cuts = [math.acos(t) for t in extra_points if -1.0 < t < 1.0]

    def sq(phi):
        x = np.cos(phi)
        return (f(x) - partial_sum(series, N, x)) ** 2

    panels = max(1, math.ceil(8 * (N + 1) / 20 / (len(cuts) + 1)))
    return math.sqrt(adaptive_gauss(sq, 0.0, math.pi, tol=tol, breakpoints=cuts, initial_panels=panels))


# ---------------------------------------------------------------------------
# Side-wise RL data, semi-norms and the coefficient identity
# ---------------------------------------------------------------------------


def _falling(alpha: float, m: int) -> float:
    out = 1.0
    for j in range(m):
        out *= alpha - j
    return out


def _falling_dalpha(alpha: float, m: int) -> float:
    # derivative in alpha of alpha (alpha-1) ... (alpha-m+1), by the product rule
    total = 0.0
    for j in range(m):
        part = 1.0
        for i in range(m):
            if i != j:
                part *= alpha - i
        total += part
    return total


def _side_terms(fam: SingularFamily, m: int):
    # u^(m) = sgn * (P d^eta + Q d^eta ln d) on each side, eta = alpha - m
    if fam.tag == "power_times_smooth":
        raise UnsupportedCaseError("RL data of power-times-smooth functions has no closed form")
    a = fam.alpha
    if fam.has_log:
        p, q = _falling_dalpha(a, m), _falling(a, m)
    else:
        p, q = _falling(a, m), 0.0
    sides = {}
    if fam.theta is not None or fam.end == 1:
        sides["left"] = (-1) ** m
    if fam.theta is not None or fam.end == -1:
        sides["right"] = 1
    return a - m, p, q, sides


def _boundary_limit(eta: float, s: float, p: float, q: float) -> float:
    e = eta + 1.0 - s
    if e > 0:
        return 0.0
    if e == 0 and q == 0.0:
        return p * gamma_product((eta + 1.0,))
    raise DivergenceError("the (1-s)-integral of u^(m) is unbounded at the singular point")


def frac_data(fam: SingularFamily, m: int, s: float) -> FracData:
    """Closed-form RL data of ``u^(m)`` for the power and power-log families."""
    eta, p, q, sides = _side_terms(fam, m)
    if eta <= -1:
        raise DomainError(f"u^(m) is not integrable for m={m}, alpha={fam.alpha}")
    theta = fam.singular_point
    data = FracData(m, s, theta)
    for side, sgn in sides.items():
        # left of theta the operator runs up to theta; right of it, from theta
        spec = RlSpec("right" if side == "left" else "left", s, theta)

        def deriv(x, spec=spec, sgn=sgn):
            out = p * rl_power(spec, "derivative", eta, x)
            if q:
                out = out + q * rl_power_log(spec, eta, x, mode="derivative")
            return sgn * out

        if p == 0.0 and q == 0.0 or (q == 0.0 and _is_nonpos_int(eta - s + 1.0)):
            deriv = None
        limit = sgn * _boundary_limit(eta, s, p, q)
        if side == "left":
            data.d_left, data.c_left = deriv, limit
        else:
            data.d_right, data.c_right = deriv, limit
    return data


def _omega(lam, x):
    return (1.0 - x * x) ** (lam - 0.5)


def _graded_integral(fn, a: float, b: float, tol: float) -> float:
    # both halves of [a, b] graded towards their outer end by t^4, so that
    # algebraic-log singularities at a or b become smooth in t
    mid = 0.5 * (a + b)
    total = 0.0
    for end, length in ((a, mid - a), (b, mid - b)):
        # points closer to the end than a few ulps are nudged inside, so that
        # hypergeometric arguments (1 -+ x)/2 stay distinct from 1
        floor = 4.0 * np.finfo(float).eps * max(1.0, abs(end))
        inner = end + math.copysign(floor, length)

        def g(t, end=end, length=length, inner=inner, floor=floor):
            x = end + length * t**GRADING_POWER
            x = np.where(np.abs(x - end) < floor, inner, x)
            return fn(x) * (GRADING_POWER * abs(length)) * t ** (GRADING_POWER - 1)

        total += adaptive_gauss(g, 0.0, 1.0, tol=0.5 * tol)
    return total


def seminorm(fam: SingularFamily, m: int, s: float, tol: float = 1e-10) -> float:
    """Semi-norm ``U^{m,s}`` of ``fam`` about its singular point.

    For ``|x - theta|^alpha`` with ``m + s = alpha + 1`` the analytic value is
    returned; other cases integrate the closed-form RL derivatives.  ``m = 0``
    requires ``1/2 < s < 1`` and uses the weight ``(1-x^2)^((s-1)/2)``.
    """
    idx = FracIndex(m, s, fam.singular_point)
    if m == 0 and not 0.5 < s < 1.0:
        raise DomainError("the m = 0 semi-norm needs s in (1/2, 1)")
    a = fam.alpha
    if fam.tag == "power_interior" and abs(idx.sigma - (a + 1.0)) < 1e-14:
        g = gamma_product((a + 1.0,))
        return 2.0 * g if m >= 1 else 2.0 * (1.0 - fam.theta**2) ** (0.5 * a) * g
    data = frac_data(fam, m, s)
    theta = data.theta
    weight_pow = 0.5 * s - 0.5 if m == 0 else 0.0

    def weighted_abs(fn):
        def g(x):
            return np.abs(fn(x)) * (1.0 - x * x) ** weight_pow
        return g

    total = 0.0
    if data.d_left is not None:
        total += _graded_integral(weighted_abs(data.d_left), -1.0, theta, tol)
    if data.d_right is not None:
        total += _graded_integral(weighted_abs(data.d_right), theta, 1.0, tol)
    wt = (1.0 - theta * theta) ** weight_pow if abs(theta) < 1 else (1.0 if weight_pow == 0 else 0.0)
    total += wt * (abs(data.c_left) + abs(data.c_right))
    return total


def coeff_identity_frac(data: FracData, n: int, tol: float = 1e-12) -> float:
    r"""Evaluate the coefficient identity in terms of side-wise RL data.

    .. math::

        \hat u_n = -C_\sigma\Big\{\int_{-1}^{\theta} D_L\,{}^{l}G\,\omega_\sigma
        + C_L\,{}^{l}G(\theta)\omega_\sigma(\theta)
        - \int_\theta^1 D_R\,{}^{r}G\,\omega_\sigma
        - C_R\,{}^{r}G(\theta)\omega_\sigma(\theta)\Big\}

    with :math:`G = G^{(\sigma)}_{n-\sigma}` and
    :math:`C_\sigma = 1/(\sqrt\pi\,2^{\sigma-1}\Gamma(\sigma+1/2))`.
    """
    sigma = data.sigma
    if not n >= sigma > 0.5:
        raise DomainError(f"identity needs n >= m + s > 1/2, got n={n}, sigma={sigma}")
    nu = n - sigma
    theta = data.theta
    right = GgfParams("right", nu, sigma)
    left = GgfParams("left", nu, sigma)
    c_sigma = 1.0 / (math.sqrt(math.pi) * 2.0 ** (sigma - 1.0) * gamma_product((sigma + 0.5,)))

    total = 0.0
    if data.d_left is not None and theta > -1.0:
        def fl(x):
            return data.d_left(x) * ggf_eval(left, x) * _omega(sigma, x)
        total += _graded_integral(fl, -1.0, theta, tol)
    if data.d_right is not None and theta < 1.0:
        def fr(x):
            return data.d_right(x) * ggf_eval(right, x) * _omega(sigma, x)
        total -= _graded_integral(fr, theta, 1.0, tol)
    if data.c_left:
        total += data.c_left * weighted_ggf(left, theta)
    if data.c_right:
        total -= data.c_right * weighted_ggf(right, theta)
    return -c_sigma * total
