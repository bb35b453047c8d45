r"""Scalar special functions and classical orthogonal polynomials.

Gamma arithmetic is carried out in log space with explicit sign tracking so
that ratios such as :math:`\Gamma(\nu+1)/\Gamma(\nu+2\lambda)` stay finite for
degrees up to :math:`10^6`.  The Gauss hypergeometric function is evaluated
by power series on :math:`|z|\le 1/2` and by the :math:`z\mapsto 1-z`
connection formulas on :math:`(1/2, 1)`, including the logarithmic cases
where :math:`c-a-b` is an integer.
"""

from __future__ import annotations

import math

import numpy as np

from fracheb.errors import AccuracyError, DivergenceError, DomainError, PoleError

__all__ = [
    "DEFAULT_TOL",
    "digamma",
    "euler_transform",
    "gamma_product",
    "gamma_ratio",
    "gegenbauer",
    "hyp2f1",
    "hyp2f1_series",
    "jacobi_p",
    "lgamma_sign",
    "ln_gamma",
    "pochhammer",
]

DEFAULT_TOL = 1e-12
MAX_TERMS = 10**6

# Arguments above this use the Stirling difference in gamma_ratio.
STIRLING_SWITCH = 50.0
INTEGER_SNAP = 1e-14

# B_{2k} / (2k (2k-1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
# B_{2k} / (2k), k = 1..7
_DIGAMMA = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def ln_gamma(x: float) -> float:
    """Return ``ln Gamma(x)`` for real ``x > 0``."""
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"ln_gamma requires a finite x > 0, got {x!r}")
    return math.lgamma(x)


def lgamma_sign(x: float) -> tuple[float, int]:
    """Return ``(ln|Gamma(x)|, sign Gamma(x))`` for any real non-pole ``x``."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"non-finite Gamma argument {x!r}")
    if _is_nonpos_int(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        return math.lgamma(x), 1
    sign = -1 if math.floor(x) % 2 else 1
    return math.lgamma(x), sign


def gamma_product(num=(), den=()) -> float:
    """Return ``prod Gamma(num) / prod Gamma(den)``.

    A pole in the denominator makes the product vanish; a pole in the
    numerator raises :class:`PoleError`.
    """
    log = 0.0
    sign = 1
    for x in num:
        lg, sg = lgamma_sign(x)
        log += lg
        sign *= sg
    for x in den:
        if _is_nonpos_int(float(x)):
            return 0.0
        lg, sg = lgamma_sign(x)
        log -= lg
        sign *= sg
    return sign * math.exp(log)


def _stirling_log_ratio(u: float, v: float, d: float | None = None) -> float:
    # ln Gamma(u) - ln Gamma(v) for u, v large, without cancellation;
    # pass d = u - v when it is known more accurately than the rounded sums
    if d is None:
        d = u - v
    out = (u - 0.5) * math.log1p(d / v) + d * math.log(v) - d
    ui, vi = 1.0 / u, 1.0 / v
    pu, pv = ui, vi
    for coef in _STIRLING:
        out += coef * (pu - pv)
        pu *= ui * ui
        pv *= vi * vi
    return out


def gamma_ratio(z: float, a: float, b: float) -> float:
    r"""Return :math:`\Gamma(z+a)/\Gamma(z+b)`.

    Both arguments may be negative non-integers (handled through the sign of
    Gamma).  For ``min(z+a, z+b) > 50`` a Stirling-difference formula is used,
    which keeps full relative accuracy for very large ``z``.
    """
    u = float(z) + float(a)
    v = float(z) + float(b)
    # compare the offsets: z + a and z + b may round together while a != b
    if float(a) == float(b):
        if _is_nonpos_int(u):
            raise PoleError(f"Gamma ratio at a double pole {u!r}")
        return 1.0
    if _is_nonpos_int(u):
        raise PoleError(f"Gamma has a pole at {u!r}")
    if _is_nonpos_int(v):
        return 0.0
    if min(u, v) > STIRLING_SWITCH:
        return math.exp(_stirling_log_ratio(u, v, float(a) - float(b)))
    lu, su = lgamma_sign(u)
    lv, sv = lgamma_sign(v)
    return su * sv * math.exp(lu - lv)


def _digamma_any(x: float) -> float:
    if _is_nonpos_int(x):
        raise PoleError(f"digamma has a pole at {x!r}")
    if x < 0:
        # reflection: psi(1-x) - psi(x) = pi cot(pi x)
        return _digamma_any(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for coef in _DIGAMMA:
        series += coef * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def digamma(z: float) -> float:
    """Return the digamma function ``psi(z)`` for real ``z > 0``."""
    z = float(z)
    if not math.isfinite(z) or z <= 0:
        raise DomainError(f"digamma requires z > 0, got {z!r}")
    return _digamma_any(z)


def pochhammer(a: float, j: int) -> float:
    """Rising factorial ``(a)_j = a (a+1) ... (a+j-1)``, with ``(a)_0 = 1``."""
    if j < 0 or int(j) != j:
        raise DomainError(f"pochhammer needs a non-negative integer j, got {j!r}")
    out = 1.0
    for k in range(int(j)):
        out *= a + k
        if out == 0.0:
            break
    return out


# --------------------------------------------------------------------------
# Gauss hypergeometric function
# --------------------------------------------------------------------------


def _series(a, b, c, z, tol):
    # returns the partial sum and the sum of absolute terms (a condition gauge)
    z = np.asarray(z, dtype=float)
    total = np.ones_like(z)
    gauge = np.ones_like(z)
    term = np.ones_like(z)
    small = 0
    zmax = np.max(np.abs(z), initial=0.0)
    for j in range(MAX_TERMS):
        factor = (a + j) * (b + j) / ((c + j) * (j + 1.0))
        if factor == 0.0:
            return total, gauge
        term = term * factor * z
        total = total + term
        gauge = gauge + np.abs(term)
        # the ratio test guards against stopping while terms still grow
        if np.all(np.abs(term) <= tol * 1e-2 * np.maximum(np.abs(total), 1e-300)) and abs(factor) * zmax < 1:
            small += 1
            if small >= 2:
                return total, gauge
        else:
            small = 0
    raise AccuracyError(f"2F1 series did not converge within {MAX_TERMS} terms")


def hyp2f1_series(a, b, c, z, tol=DEFAULT_TOL):
    """Sum the defining power series of 2F1 directly (vectorised in ``z``).

    Only meaningful for ``|z| < 1``; convergence is geometric with ratio
    ``|z|``.  Terminates exactly when ``a`` or ``b`` is a non-positive integer.
    """
    if _is_nonpos_int(c):
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    return _series(a, b, c, z, tol)[0]


def euler_transform(a, b, c, z, tol=DEFAULT_TOL):
    """Evaluate ``(1-z)^(c-a-b) * series(c-a, c-b; c; z)`` (Euler's transform)."""
    z = np.asarray(z, dtype=float)
    return (1.0 - z) ** (c - a - b) * hyp2f1_series(c - a, c - b, c, z, tol)


def _terminating(a, b, c, z, tol):
    # choose the finite parameter -n
    if _is_nonpos_int(a) and (not _is_nonpos_int(b) or a >= b):
        n, other = int(-a), b
    else:
        n, other = int(-b), a
    out = np.empty_like(z)
    lo = z <= 0.5
    if np.any(lo):
        out[lo] = hyp2f1_series(-n, other, c, z[lo], tol)
    if np.any(~lo):
        cc = other - c - n + 1
        if _is_nonpos_int(cc):
            out[~lo] = hyp2f1_series(-n, other, c, z[~lo], tol)
        else:
            pref = pochhammer(c - other, n) / pochhammer(c, n)
            out[~lo] = pref * hyp2f1_series(-n, other, cc, 1.0 - z[~lo], tol)
    return out


def _log_case_series(w, coef_fn, psi_fn, tol):
    # sum_n coef_n w^n [ln w - psi-combination_n] with running coefficients
    logw = np.log(w)
    total = np.zeros_like(w)
    wn = np.ones_like(w)
    small = 0
    for n in range(MAX_TERMS):
        cn = coef_fn(n)
        term = cn * wn * (logw - psi_fn(n))
        total = total + term
        wn = wn * w
        scale = np.maximum(np.abs(total), 1e-300)
        if n > 2 and np.all(np.abs(term) <= tol * scale * 1e-2):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise AccuracyError("2F1 logarithmic connection series did not converge")


def _taylor_step(a, b, c, w0, f, df, h, tol):
    # Taylor series about z0 = 1 - w0 of the solution of the hypergeometric
    # ODE, carried as the scaled terms s_k = t_k h^k to avoid overflow
    p0, p1 = (1.0 - w0) * w0, 2.0 * w0 - 1.0
    q1 = a + b + 1.0
    q0 = c - q1 + q1 * w0
    s_prev, s_cur = f, df * h
    val = s_prev + s_cur
    der = s_cur
    small = 0
    for k in range(MAX_TERMS):
        s_next = -((p1 * k * (k + 1) + q0 * (k + 1)) * h * s_cur
                   - (k * (k - 1) + q1 * k + a * b) * h * h * s_prev) / (p0 * (k + 2) * (k + 1))
        val += s_next
        der += (k + 2) * s_next
        if abs(s_next) <= tol * 1e-3 * max(abs(val), 1e-300):
            small += 1
            if small >= 3:
                return val, der / h
        else:
            small = 0
        s_prev, s_cur = s_cur, s_next
    raise AccuracyError("Taylor continuation of 2F1 did not converge")


def _ode_continue(a, b, c, w, tol):
    # analytic continuation from z = 1/2 to z = 1 - w, halving the distance
    # to the singular point each step; the distance is tracked exactly
    w0 = 0.5
    f = float(hyp2f1_series(a, b, c, 0.5, tol))
    df = a * b / c * float(hyp2f1_series(a + 1, b + 1, c + 1, 0.5, tol))
    while w0 - w > 0.5 * w0:
        f, df = _taylor_step(a, b, c, w0, f, df, 0.5 * w0, tol)
        w0 *= 0.5
    if w0 > w:
        f, df = _taylor_step(a, b, c, w0, f, df, w0 - w, tol)
    return f


# Between the snap tolerance and this distance from an integer c-a-b the
# connection formula cancels badly and ODE continuation is used instead.
NEAR_INTEGER_BAND = 1e-3
DIRECT_LIMIT = 0.8


def _near_one(a, b, c, z, tol):
    w = 1.0 - z
    d = c - a - b
    dr = round(d)
    gap = abs(d - dr)
    if INTEGER_SNAP * max(1.0, abs(d)) < gap < NEAR_INTEGER_BAND:
        return np.array([_ode_continue(a, b, c, ww, tol) for ww in w])
    if gap > INTEGER_SNAP * max(1.0, abs(d)):
        first = gamma_product((c, d), (c - a, c - b))
        second = gamma_product((c, -d), (a, b))
        out = np.zeros_like(z)
        gauge = np.zeros_like(z)
        if first != 0.0:
            part = first * hyp2f1_series(a, b, 1.0 - d, w, tol)
            out, gauge = out + part, gauge + np.abs(part)
        if second != 0.0:
            part = second * w**d * hyp2f1_series(c - a, c - b, d + 1.0, w, tol)
            out, gauge = out + part, gauge + np.abs(part)
        bad = gauge > 1e3 * np.abs(out)
        if np.any(bad):
            out[bad] = [_ode_continue(a, b, c, ww, tol) for ww in w[bad]]
        return out

    m = int(abs(dr))
    if dr >= 0:
        # c = a + b + m
        c = a + b + m
        finite = np.zeros_like(z)
        if m > 0:
            pref = gamma_product((m, c), (a + m, b + m))
            coef = 1.0
            wn = np.ones_like(z)
            for n in range(m):
                finite = finite + pref * coef * wn
                if n + 1 < m:
                    coef *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n))
                wn = wn * w
        lead = gamma_product((c,), (a, b))
        if lead == 0.0:
            return finite
        state = {"c": 1.0 / math.factorial(m), "n": -1}
        psi = {"n": 0, "v": _digamma_any(1.0) + _digamma_any(m + 1.0)
               - _digamma_any(a + m) - _digamma_any(b + m)}

        def coef_fn(n):
            if n > 0:
                state["c"] *= (a + m + n - 1) * (b + m + n - 1) / (n * (n + m))
            return state["c"]

        def psi_fn(n):
            if n > psi["n"]:
                k = n - 1
                psi["v"] += 1.0 / (k + 1) + 1.0 / (k + m + 1) - 1.0 / (a + k + m) - 1.0 / (b + k + m)
                psi["n"] = n
            return psi["v"]

        tail = _log_case_series(w, coef_fn, psi_fn, tol)
        return finite - (-w) ** m * lead * tail

    # c = a + b - m, m >= 1
    c = a + b - m
    pref = gamma_product((m, c), (a, b))
    finite = np.zeros_like(z)
    if pref != 0.0:
        coef = 1.0
        wn = np.ones_like(z)
        for n in range(m):
            finite = finite + coef * wn
            if n + 1 < m:
                coef *= (a - m + n) * (b - m + n) / ((n + 1.0) * (1.0 - m + n))
            wn = wn * w
        finite = pref * w ** (-m) * finite
    lead = gamma_product((c,), (a - m, b - m))
    if lead == 0.0:
        return finite
    state = {"c": 1.0 / math.factorial(m)}
    psi = {"n": 0, "v": _digamma_any(1.0) + _digamma_any(m + 1.0) - _digamma_any(a) - _digamma_any(b)}

    def coef_fn(n):
        if n > 0:
            state["c"] *= (a + n - 1) * (b + n - 1) / (n * (n + m))
        return state["c"]

    def psi_fn(n):
        if n > psi["n"]:
            k = n - 1
            psi["v"] += 1.0 / (k + 1) + 1.0 / (k + m + 1) - 1.0 / (a + k) - 1.0 / (b + k)
            psi["n"] = n
        return psi["v"]

    tail = _log_case_series(w, coef_fn, psi_fn, tol)
    return finite - (-1) ** m * lead * tail


def hyp2f1(a, b, c, z, tol=DEFAULT_TOL):
    r"""Gauss hypergeometric function :math:`{}_2F_1(a,b;c;z)` for real ``z`` in ``[-1, 1]``.

    ``z`` may be a scalar or an array; the return type follows ``z``.

    Raises
    ------
    DivergenceError
        At ``z = 1`` when ``c - a - b <= 0`` and the series does not terminate.
    """
    a, b, c = float(a), float(b), float(c)
    if _is_nonpos_int(c):
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float)).copy()
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) > 1.0):
        raise DomainError("hyp2f1 is only provided for z in [-1, 1]")

    out = np.empty_like(z)
    terminating = _is_nonpos_int(a) or _is_nonpos_int(b)
    at_one = z == 1.0
    if np.any(at_one):
        if terminating:
            n = int(-a) if _is_nonpos_int(a) else int(-b)
            other = b if _is_nonpos_int(a) else a
            out[at_one] = pochhammer(c - other, n) / pochhammer(c, n)
        elif c - a - b > 0:
            out[at_one] = gamma_product((c, c - a - b), (c - a, c - b))
        else:
            raise DivergenceError(f"2F1({a}, {b}; {c}; 1) diverges since c-a-b = {c - a - b} <= 0")
    rest = ~at_one
    if terminating:
        out[rest] = _terminating(a, b, c, z[rest], tol)
    elif _is_nonpos_int(c - a) or _is_nonpos_int(c - b):
        # Euler's transform turns the series into a polynomial
        zz = z[rest]
        out[rest] = (1.0 - zz) ** (c - a - b) * hyp2f1(c - a, c - b, c, zz, tol)
    else:
        mid = rest & (np.abs(z) <= 0.5)
        low = rest & (z < -0.5)
        high = rest & (z > 0.5)
        if np.any(mid):
            out[mid] = hyp2f1_series(a, b, c, z[mid], tol)
        if np.any(low):
            zz = z[low]
            out[low] = (1.0 - zz) ** (-a) * hyp2f1(a, c - b, c, zz / (zz - 1.0), tol)
        if np.any(high):
            zz = z[high]
            vals = np.empty_like(zz)
            # the direct series is still cheap below 0.8 and is preferred
            # whenever its terms do not cancel
            ok = zz <= DIRECT_LIMIT
            if np.any(ok):
                direct, gauge = _series(a, b, c, zz[ok], tol)
                good = gauge <= 10.0 * np.abs(direct)
                idx = np.flatnonzero(ok)
                vals[idx[good]] = direct[good]
                ok[idx[~good]] = False
            if np.any(~ok):
                vals[~ok] = _near_one(a, b, c, zz[~ok], tol)
            out[high] = vals
    return float(out[0]) if scalar else out


# --------------------------------------------------------------------------
# Classical polynomials
# --------------------------------------------------------------------------


def gegenbauer(n: int, lam: float, x):
    r"""Gegenbauer polynomial normalised by :math:`G_n^{(\lambda)}(1) = 1`.

    Uses :math:`(n+2\lambda) G_{n+1} = 2(n+\lambda) x G_n - n G_{n-1}`; for
    ``lam = 0`` this is the Chebyshev recurrence.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    if lam <= -0.5:
        raise DomainError(f"lambda must exceed -1/2, got {lam!r}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if x.ndim else float(prev)
    cur = x.copy()
    for k in range(1, int(n)):
        prev, cur = cur, (2.0 * (k + lam) * x * cur - k * prev) / (k + 2.0 * lam)
    return cur if x.ndim else float(cur)


def jacobi_p(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial with the standard normalisation ``P_n(1) = (alpha+1)_n / n!``."""
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if x.ndim else float(p0)
    ab = alpha + beta
    p1 = 0.5 * (alpha - beta + (ab + 2.0) * x)
    for k in range(2, int(n) + 1):
        a1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0)
        a2 = (2.0 * k + ab - 1.0) * (alpha * alpha - beta * beta)
        a3 = (2.0 * k + ab - 2.0) * (2.0 * k + ab - 1.0) * (2.0 * k + ab)
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab)
        p0, p1 = p1, ((a2 + a3 * x) * p1 - a4 * p0) / a1
    return p1 if x.ndim else float(p1)
