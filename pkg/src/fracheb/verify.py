"""Self-verification suites.

Each suite compares a closed formula with an independent numerical oracle
(or checks an inequality) over a fixed sample matrix and yields one
:class:`Check` per comparison.  Suites are deterministic: sample sets are
fixed, and parallel evaluation returns results in submission order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from fracheb import bounds, cheb
from fracheb.ggf import GgfParams, endpoint_limit, ggf_eval, kappa, kappa_hat, weighted_ggf
from fracheb.rl import ggf_frac_identity
from fracheb.special import (
    digamma,
    euler_transform,
    gamma_product,
    gamma_ratio,
    gegenbauer,
    hyp2f1,
    hyp2f1_series,
    ln_gamma,
)

SUITES = ("special", "ggf-bounds", "frac-identities", "coeff-oracle", "decay-rates", "bound-domination")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    case: str
    value: float
    limit: float
    passed: bool
    note: str = ""


def worker_count() -> int:
    """Worker threads, capped by ``FRACHEB_THREADS`` when set."""
    default = min(8, os.cpu_count() or 1)
    raw = os.environ.get("FRACHEB_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def ordered_map(fn, items):
    """``list(map(fn, items))`` on a thread pool, results in input order."""
    items = list(items)
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _le(suite, name, case, value, limit, note=""):
    return Check(suite, name, case, float(value), float(limit), bool(value <= limit), note)


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------


def suite_special():
    out = []
    for z in (0.5, 1.0, 2.0, 10.0, 100.0):
        psi = digamma(z)
        lo, hi = math.log(z) - 1.0 / z, math.log(z) - 0.5 / z
        gap = max(lo - psi, psi - hi)
        out.append(Check("special", "digamma bracket", f"z={z:g}", gap, 0.0, lo < psi < hi))
    for z in (0.3, 1.0, 2.5, 17.25, 140.0):
        resid = abs(ln_gamma(2 * z) - (2 * z - 1) * math.log(2.0) + 0.5 * math.log(math.pi)
                    - ln_gamma(z) - ln_gamma(z + 0.5))
        out.append(_le("special", "Gamma duplication", f"z={z:g}", resid, 1e-12))
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = rng.uniform(-2.0, 2.0, 2)
        c = rng.uniform(0.3, 3.0)
        z = rng.uniform(0.0, 0.9)
        direct = hyp2f1_series(a, b, c, z)
        euler = euler_transform(a, b, c, z)
        err = abs(direct - euler) / max(1.0, abs(direct))
        out.append(_le("special", "Euler transform", f"a={a:.3f},b={b:.3f},c={c:.3f},z={z:.3f}", err, 1e-10))
    for a, b, c in ((1.0, 1.0, 3.0), (0.5, -0.7, 1.3), (-0.2, 0.4, 2.1), (0.3, 0.3, 1.1)):
        exact = gamma_product((c, c - a - b), (c - a, c - b))
        err = abs(hyp2f1(a, b, c, 1.0) - exact) / abs(exact)
        near = abs(hyp2f1(a, b, c, 1.0 - 1e-13) - exact) / abs(exact)
        out.append(_le("special", "Gauss sum", f"a={a},b={b},c={c}", err, 1e-12))
        out.append(_le("special", "Gauss sum continuity", f"a={a},b={b},c={c}", near, 1e-6))
    for a, b in ((0.0, 0.5), (0.25, 1.0), (0.0, 2.0)):
        zs = np.linspace(0.5, 60.0, 200)
        vals = np.array([gamma_ratio(z, a, b) for z in zs])
        worst = float(np.max(np.diff(vals)))
        out.append(_le("special", "Gamma ratio decreasing", f"a={a},b={b}", worst, 0.0))
    return out


# ---------------------------------------------------------------------------
# GGF-F
# ---------------------------------------------------------------------------

KAPPA_LAMBDAS = (1.0, 1.3, 2.0, 3.5)
KAPPA_HAT_LAMBDAS = (0.2, 0.5, 0.9)
BOUND_NUS = (0.3, 1.7, 5.5, 20.2)


def sup_grid(size: int = 10_000) -> np.ndarray:
    k = np.arange(size)
    cheb_pts = np.cos(np.pi * (k + 0.5) / size)
    near = 1.0 - np.geomspace(1e-8, 1e-3, 10)
    return np.unique(np.concatenate([cheb_pts, near, -near]))


def _ggf_bound_case(args):
    side, lam, nu = args
    xs = sup_grid()
    p = GgfParams(side, nu, lam)
    if lam >= 1.0:
        weight, limit, name = "gegenbauer_w_lambda", kappa(nu, lam), "weighted GGF <= kappa"
    else:
        weight, limit, name = "half_power", kappa_hat(nu, lam), "weighted GGF <= kappa_hat"
    value = float(np.max(np.abs(weighted_ggf(p, xs, weight=weight))))
    return _le("ggf-bounds", name, f"{side},lambda={lam:g},nu={nu:g}", value, limit + 1e-10)


def suite_ggf_bounds():
    out = []
    xs = np.linspace(-1.0, 1.0, 1001)
    worst = 0.0
    for lam in (0.0, 0.5, 1.0, 1.7):
        for n in range(21):
            for side in ("right", "left"):
                dev = np.max(np.abs(ggf_eval(GgfParams(side, float(n), lam), xs) - gegenbauer(n, lam, xs)))
                worst = max(worst, float(dev))
    out.append(_le("ggf-bounds", "integer degree reduces to Gegenbauer", "n<=20", worst, 1e-10))

    value = abs(endpoint_limit(GgfParams("right", 0.5, 0.0), -1))
    out.append(_le("ggf-bounds", "endpoint value at -1", "nu=0.5,lambda=0", value, 1e-9))
    for lam in (0.0, 0.5, 1.0, 1.7):
        for nu in (0.3, 0.5, 1.5, 2.7, 5.5):
            err = abs(endpoint_limit(GgfParams("right", nu, lam), 1) - 1.0)
            out.append(_le("ggf-bounds", "endpoint value at +1", f"nu={nu:g},lambda={lam:g}", err, 1e-9))

    cases = [(side, lam, nu) for side in ("right", "left")
             for lam in KAPPA_LAMBDAS + KAPPA_HAT_LAMBDAS for nu in BOUND_NUS]
    out.extend(ordered_map(_ggf_bound_case, cases))
    return out


# ---------------------------------------------------------------------------
# RL identities and the coefficient identity
# ---------------------------------------------------------------------------

IDENTITY_NUS = (0.7, 1.5, 3.2)
IDENTITY_LAMBDAS = (0.3, 1.0, 2.0)
IDENTITY_ORDERS = (0.25, 0.5, 0.9)
IDENTITY_XS = (-0.5, 0.0, 0.6)


def identity_cases():
    cases = []
    for side in ("right", "left"):
        for nu in IDENTITY_NUS:
            for lam in IDENTITY_LAMBDAS:
                for s in IDENTITY_ORDERS:
                    for x in IDENTITY_XS:
                        if nu >= s:
                            cases.append((side, nu, lam, s, x, "integral"))
                        if lam > s - 0.5:
                            cases.append((side, nu, lam, s, x, "derivative"))
    return cases


def _identity_case(args):
    side, nu, lam, s, x, mode, tol = args
    lhs, rhs = ggf_frac_identity(side, nu, lam, s, x, mode=mode, tol=tol)
    return _le("frac-identities", f"RL {mode} of weighted GGF", f"{side},nu={nu},lambda={lam},s={s},x={x}",
               abs(lhs - rhs), 1e-7)


def _coeff_identity_cases():
    fam = cheb.SingularFamily
    return [
        (fam.power_interior(1.5, 0.3), 1, 0.5),
        (fam.power_interior(1.5, 0.3), 1, 0.3),
        (fam.power_interior(0.5, -0.4), 0, 0.7),
        (fam.power_log_interior(1.5, 0.0), 1, 0.4),
        (fam.power_endpoint(1.5, -1), 1, 0.5),
        (fam.power_endpoint(0.7, 1), 0, 0.8),
    ]


def suite_frac_identities(tol: float = 1e-11):
    out = ordered_map(_identity_case, [case + (tol,) for case in identity_cases()])
    for f, m, s in _coeff_identity_cases():
        data = cheb.frac_data(f, m, s)
        for n in (2, 7, 20):
            got = cheb.coeff_identity_frac(data, n, tol=min(tol, 1e-12))
            ref = cheb.coeff_quadrature(f, n)
            out.append(_le("frac-identities", "coefficient identity",
                           f"{f.tag},alpha={f.alpha:g},m={m},s={s},n={n}", abs(got - ref), 1e-10))
    return out


# ---------------------------------------------------------------------------
# coefficient oracle
# ---------------------------------------------------------------------------


def oracle_families():
    fam = cheb.SingularFamily
    out = [fam.power_interior(a, t) for a in (-0.25, 0.5, 1.0, 1.5, 2.7) for t in (0.0, 0.3, -0.6)]
    out += [fam.power_log_interior(a, 0.0) for a in (0.0, 0.5, 1.5, 3.0)]
    out += [fam.power_endpoint(a, e) for a in (-0.3, 0.5, 1.5, 2.5) for e in (-1, 1)]
    out += [fam.power_log_endpoint(a, e) for a in (-0.3, 0.5, 2.0) for e in (-1, 1)]
    out += [fam.power_times_smooth(a, e, (1.0, 0.5, -0.25, 0.1)) for a in (0.5, 1.3) for e in (-1, 1)]
    return out


# coefficients below this are compared in absolute terms: the double
# precision quadrature carries ~1e-15 absolute rounding noise
ORACLE_FLOOR = 1e-13


def _oracle_case(args):
    f, n_max = args
    worst = 0.0
    for n in range(n_max + 1):
        try:
            exact = cheb.coeff_exact(f, n)
        except cheb.UnsupportedCaseError:
            exact = None
        quad = cheb.coeff_quadrature(f, n)
        if exact is None:
            continue
        worst = max(worst, abs(exact - quad) / max(abs(quad), ORACLE_FLOOR / 1e-7))
    where = f"theta={f.theta:g}" if f.theta is not None else f"end={f.end:+d}"
    return _le("coeff-oracle", "closed form vs quadrature", f"{f.tag},alpha={f.alpha:g},{where}", worst, 1e-7,
               cheb.SIGN_CORRECTIONS[f.tag])


def suite_coeff_oracle(n_max: int = 64):
    out = ordered_map(_oracle_case, [(f, n_max) for f in oracle_families()])
    for row in cheb.calibrate_signs():
        note = f"printed {row.displayed:.10g}, corrected {row.corrected:.10g}: {row.verdict}"
        err = abs(row.corrected - row.quadrature)
        out.append(_le("coeff-oracle", "sign calibration", f"{row.family},{row.params},n={row.n}", err, 1e-10, note))
    witness = bounds.bound_power_interior(1.0, 0.0, 2)
    exact = cheb.coeff_exact(cheb.SingularFamily.power_interior(1.0, 0.0), 2)
    out.append(_le("coeff-oracle", "bound attained", "alpha=1,theta=0,n=2", abs(witness / abs(exact) - 1.0), 1e-12))
    zero = max(abs(cheb.coeff_exact(cheb.SingularFamily.power_interior(a, 0.0), n))
               for a in (0.5, 1.5) for n in range(1, 65, 2))
    out.append(_le("coeff-oracle", "odd coefficients vanish at theta=0", "n odd<=63", zero, 0.0))
    return out


# ---------------------------------------------------------------------------
# decay rates
# ---------------------------------------------------------------------------


def fitted_slope(f, ks) -> float:
    ks = np.asarray(ks)
    vals = np.array([abs(cheb.coeff_exact(f, 2 * int(k))) for k in ks])
    return float(np.polyfit(np.log(ks), np.log(vals), 1)[0])


def suite_decay_rates():
    out = []
    ks = np.arange(50, 501)
    for a in (0.5, 1.5):
        slope = fitted_slope(cheb.SingularFamily.power_interior(a, 0.0), ks)
        out.append(_le("decay-rates", "interior power slope", f"alpha={a}", abs(slope + a + 1.0), 0.05,
                       f"slope {slope:.5f}"))
        slope = fitted_slope(cheb.SingularFamily.power_endpoint(a, -1), 2 * ks)
        out.append(_le("decay-rates", "endpoint power slope", f"alpha={a}", abs(slope + 2.0 * a + 1.0), 0.05,
                       f"slope {slope:.5f}"))
    for a in (2.0, 4.0):
        f = cheb.SingularFamily.power_log_interior(a, 0.0)
        scaled = np.array([abs(cheb.coeff_exact(f, 2 * int(k))) * k ** (a + 1.0) for k in ks])
        spread = float(scaled.max() / scaled.min())
        out.append(_le("decay-rates", "even-alpha log family has no log factor", f"alpha={a}", spread, 1.05,
                       f"k^(alpha+1)|u_2k| in [{scaled.min():.6g}, {scaled.max():.6g}]"))
    return out


# ---------------------------------------------------------------------------
# bound domination
# ---------------------------------------------------------------------------


def suite_bound_domination():
    out = []
    for theta in (0.0, 0.5, 0.8):
        v_t = 2.0 / math.sqrt(1.0 - theta * theta)
        worst = -math.inf
        for n in range(2, 201):
            imp = bounds.bound_int_coeff(1, 2.0, n, form="unified")
            maj = bounds.bound_prior("majidian", 1, v_t, n)
            tre = bounds.bound_prior("trefethen", 1, v_t, n)
            worst = max(worst, imp - maj * (1 + 1e-14), maj - tre * (1 + 1e-14))
        out.append(_le("bound-domination", "improved <= majidian <= trefethen", f"theta={theta}", worst, 0.0))
    for theta in (0.5, 0.8):
        rows = bounds.bound_ratios(theta, range(2, 101))
        low = min(min(r.ratio1, r.ratio2) for r in rows)
        out.append(Check("bound-domination", "prior/improved ratios exceed 1", f"theta={theta}", low, 1.0, low > 1.0))

    for theta in (0.0, 0.5, 0.8, -0.3):
        f = cheb.SingularFamily.power_interior(1.0, theta)
        series = cheb.chebyshev_series(f, 256, method="auto")
        for N in (16, 32, 64, 128, 256):
            err = cheb.measured_error(f, series, N)
            out.append(_le("bound-domination", "sup error within integer truncation bound",
                           f"|x-{theta}|,N={N}", err, bounds.bound_int_trunc(1, {2: 2.0}, N)))
    f = cheb.SingularFamily.power_interior(1.5, 0.0)
    series = cheb.chebyshev_series(f, 256)
    U = cheb.seminorm(f, 1, 0.5)
    for N in (16, 32, 64, 128, 256):
        err = cheb.measured_error(f, series, N, norm="l2_chebweight")
        out.append(_le("bound-domination", "weighted L2 error within fractional bound", f"|x|^1.5,N={N}", err,
                       bounds.bound_frac_trunc(U, 1, 0.5, N, norm="l2")))
        err = cheb.measured_error(f, series, N)
        out.append(_le("bound-domination", "sup error within fractional bound", f"|x|^1.5,N={N}", err,
                       bounds.bound_frac_trunc(U, 1, 0.5, N, norm="linf")))
    # m = 0: an absolutely continuous function with a square-root cusp
    f = cheb.SingularFamily.power_interior(0.5, 0.3)
    series = cheb.chebyshev_series(f, 256, method="auto")
    variation = 1.3**0.5 + 0.7**0.5
    for N in (16, 64, 256):
        out.append(_le("bound-domination", "sup error within total variation", f"|x-0.3|^0.5,N={N}",
                       cheb.measured_error(f, series, N), bounds.bound_int_trunc(0, {1: variation}, N)))
    out.extend(_coefficient_domination())
    return out


def _coefficient_domination():
    out = []
    fam = cheb.SingularFamily
    for a, t in ((-0.25, 0.0), (-0.25, 0.6), (0.5, 0.3), (1.0, 0.0), (1.5, -0.5), (2.7, 0.2)):
        f = fam.power_interior(a, t)
        worst = 0.0
        for n in range(math.ceil(a + 1), 129):
            exact = abs(cheb.coeff_exact(f, n))
            worst = max(worst, exact / bounds.bound_power_interior(a, t, n))
        out.append(_le("bound-domination", "coefficients within power bound", f"alpha={a},theta={t}",
                       worst, 1.0 + 1e-12))
    for a in (0.5, 1.5, 2.5):
        f = fam.power_endpoint(a, -1)
        m = math.floor(a + 1.0)
        s = a + 1.0 - m
        U = math.gamma(a + 1.0)
        worst = max(abs(cheb.coeff_exact(f, n)) / bounds.bound_frac_coeff(U, m, s, n)
                    for n in range(math.ceil(a + 1), 129))
        out.append(_le("bound-domination", "endpoint coefficients within bound", f"alpha={a}", worst, 1.0 + 1e-12))
    for a, m, s in ((1.5, 1, 0.4), (2.0, 2, 0.5), (0.5, 0, 0.9)):
        f = fam.power_log_interior(a, 0.0)
        U = cheb.seminorm(f, m, s)
        worst = max(abs(cheb.coeff_exact(f, n)) / bounds.bound_frac_coeff(U, m, s, n)
                    for n in range(math.ceil(m + s), 129))
        out.append(_le("bound-domination", "log coefficients within bound", f"alpha={a},m={m},s={s}",
                       worst, 1.0 + 1e-12))
    return out


RUNNERS = {
    "special": suite_special,
    "ggf-bounds": suite_ggf_bounds,
    "frac-identities": suite_frac_identities,
    "coeff-oracle": suite_coeff_oracle,
    "decay-rates": suite_decay_rates,
    "bound-domination": suite_bound_domination,
}


def run(suite: str, tol: float | None = None) -> list[Check]:
    """Run one suite by name, or every suite for ``"all"``.

    ``tol`` sets the quadrature tolerance of the identity suite; thresholds
    of the checks themselves are fixed.
    """
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name == "frac-identities" and tol is not None:
            out.extend(suite_frac_identities(tol))
        else:
            out.extend(RUNNERS[name]())
    return out
