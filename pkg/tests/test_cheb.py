import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate

from fracheb.cheb import (
    SIGN_CORRECTIONS,
    CoeffSeries,
    FracData,
    FracIndex,
    SingularFamily,
    calibrate_signs,
    chebyshev_series,
    coeff_asymptotic,
    coeff_displayed,
    coeff_exact,
    coeff_identity_frac,
    coeff_quadrature,
    error_grid,
    frac_data,
    measured_error,
    partial_sum,
    seminorm,
)
from fracheb.errors import DomainError, UnsupportedCaseError
from fracheb.verify import fitted_slope

F = SingularFamily


def scipy_coeff(f, n, points=()):
    # independent oracle: QUADPACK in phi with breaks at the singular angles
    cuts = sorted(math.acos(p) for p in points if -1 < p < 1)
    edges = [0.0, *cuts, math.pi]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(lambda t: f(math.cos(t)) * math.cos(n * t), lo, hi, limit=400, epsabs=1e-13)
        total += val
    return 2.0 / math.pi * total


# -- families -----------------------------------------------------------------


def test_family_validation():
    with pytest.raises(DomainError):
        F.power_interior(-0.5, 0.0)
    with pytest.raises(DomainError):
        F.power_interior(1.0, 1.0)
    with pytest.raises(DomainError):
        F.power_log_interior(-0.1, 0.0)
    with pytest.raises(DomainError):
        F.power_endpoint(1.0, end=0)


def test_family_evaluation():
    x = np.array([-0.5, 0.0, 0.7])
    np.testing.assert_allclose(F.power_interior(1.5, 0.2)(x), np.abs(x - 0.2) ** 1.5)
    np.testing.assert_allclose(F.power_endpoint(0.5, 1)(x), (1 - x) ** 0.5)
    np.testing.assert_allclose(F.power_log_endpoint(1.0, -1)(x), (1 + x) * np.log(1 + x))
    g = F.power_times_smooth(0.5, -1, (1.0, 2.0))
    np.testing.assert_allclose(g(x), (1 + x) ** 0.5 * (1 + 2 * (x + 1)))
    assert F.power_log_interior(1.0, 0.0)(0.0) == 0.0


def test_frac_index():
    assert FracIndex(1, 0.5).sigma == 1.5
    with pytest.raises(DomainError):
        FracIndex(0, 1.5)


# -- quadrature oracle --------------------------------------------------------


def test_quadrature_orthonormality():
    t3 = lambda x: 4 * x**3 - 3 * x
    for n in range(8):
        expected = 1.0 if n == 3 else 0.0
        assert coeff_quadrature(t3, n) == pytest.approx(expected, abs=1e-14)


def test_quadrature_examples():
    assert coeff_quadrature(np.abs, 2, singular_points=(0.0,)) == pytest.approx(4 / (3 * math.pi), rel=1e-13)
    f = lambda x: np.sqrt(1 + x)
    assert coeff_quadrature(f, 2, singular_points=(-1.0,)) == pytest.approx(-4 * math.sqrt(2) / (15 * math.pi), rel=1e-13)


@pytest.mark.parametrize("alpha, theta", [(0.5, 0.3), (-0.3, -0.6), (1.7, 0.0), (-0.45, 0.5)])
def test_quadrature_matches_scipy_interior(alpha, theta):
    fam = F.power_interior(alpha, theta)
    for n in (0, 1, 5, 17):
        ref = scipy_coeff(lambda x: abs(x - theta) ** alpha, n, (theta,))
        assert coeff_quadrature(fam, n) == pytest.approx(ref, rel=1e-8, abs=1e-11)


def test_quadrature_raises_node_count_to_minimum():
    # a short node request is lifted to 8(n+1) rather than under-resolving
    got = coeff_quadrature(np.abs, 10, nodes=20, singular_points=(0.0,))
    assert got == pytest.approx(coeff_exact(F.power_interior(1.0, 0.0), 10), rel=1e-12)
    with pytest.raises(DomainError):
        coeff_quadrature(np.abs, -1)


# -- closed forms ---------------------------------------------------------------


def test_exact_examples():
    assert coeff_exact(F.power_interior(1.0, 0.0), 2) == pytest.approx(4 / (3 * math.pi), rel=1e-14)
    assert coeff_exact(F.power_endpoint(0.5, -1), 2) == pytest.approx(-4 * math.sqrt(2) / (15 * math.pi), rel=1e-14)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.5, 2.0, 3.7])
def test_odd_coefficients_vanish_at_centre(alpha):
    for n in (1, 3, 9, 31):
        assert coeff_exact(F.power_interior(alpha, 0.0), n) == 0.0
        assert coeff_exact(F.power_log_interior(alpha, 0.0), n) == 0.0


def test_displayed_sign_corrected_for_absolute_value():
    fam = F.power_interior(1.0, 0.0)
    assert coeff_displayed(fam, 2) == pytest.approx(-coeff_exact(fam, 2))
    assert coeff_quadrature(fam, 2) > 0


def test_calibration_report_records_the_correction():
    rows = calibrate_signs()
    hit = [r for r in rows if r.family == "power_interior" and r.n == 2 and "alpha=1" in r.params and "theta=0" in r.params]
    assert hit and hit[0].verdict == "opposite sign"
    assert all(math.copysign(1, r.corrected) == math.copysign(1, r.quadrature) for r in rows if abs(r.quadrature) > 1e-12)
    assert set(SIGN_CORRECTIONS) == {"power_interior", "power_log_interior", "power_endpoint",
                                    "power_log_endpoint", "power_times_smooth"}


def test_exact_refuses_small_n_off_centre():
    with pytest.raises(UnsupportedCaseError):
        coeff_exact(F.power_interior(2.5, 0.3), 2)
    with pytest.raises(UnsupportedCaseError):
        coeff_exact(F.power_log_interior(1.0, 0.4), 4)


def _cases():
    yield F.power_interior(0.5, 0.3)
    yield F.power_interior(-0.3, 0.0)
    yield F.power_interior(2.5, -0.7)
    yield F.power_interior(2.0, 0.0)
    yield F.power_log_interior(1.5, 0.0)
    yield F.power_log_interior(2.0, 0.0)
    yield F.power_endpoint(0.5, -1)
    yield F.power_endpoint(1.5, 1)
    yield F.power_endpoint(-0.3, -1)
    yield F.power_log_endpoint(0.5, -1)
    yield F.power_log_endpoint(2.0, 1)
    yield F.power_times_smooth(0.5, -1, (1.0, -0.5, 0.25))
    yield F.power_times_smooth(1.5, 1, (2.0, 1.0))


@pytest.mark.parametrize("fam", list(_cases()), ids=lambda f: f"{f.tag}-{f.alpha}-{f.singular_point}")
def test_exact_matches_mpmath(fam):
    # 30-digit quadrature in phi, split at the singular angle
    cut = mp.acos(fam.singular_point) if fam.theta is not None else None

    def g(t):
        x = mp.cos(t)
        if fam.theta is not None:
            d = abs(x - fam.theta)
        else:
            # half-angle forms avoid cancellation in 1 + cos t near t = pi
            d = 2 * mp.cos(t / 2) ** 2 if fam.end == -1 else 2 * mp.sin(t / 2) ** 2
        if d == 0:
            return mp.mpf(0)
        val = d ** fam.alpha
        if fam.has_log:
            val *= mp.log(d)
        if fam.tag == "power_times_smooth":
            val *= sum(c * (x - fam.end) ** k for k, c in enumerate(fam.taylor))
        return val

    with mp.workdps(30):
        pts = [0, cut, mp.pi] if cut is not None else [0, mp.pi]
        for n in (0, 1, 2, 3, 8, 21):
            try:
                exact = coeff_exact(fam, n)
            except UnsupportedCaseError:
                continue
            ref = 2 / mp.pi * mp.quad(lambda t: g(t) * mp.cos(n * t), pts)
            assert exact == pytest.approx(float(ref), rel=1e-10, abs=1e-15)


def test_even_integer_power_small_degrees_are_binomial():
    # x^4 = (3 T_0 + 4 T_2 + T_4) / 8 with the halved first term
    fam = F.power_interior(4.0, 0.0)
    assert coeff_exact(fam, 0) == pytest.approx(0.75)
    assert coeff_exact(fam, 2) == pytest.approx(0.5)
    assert coeff_exact(fam, 4) == pytest.approx(0.125)
    assert coeff_exact(fam, 6) == pytest.approx(0.0, abs=1e-16)


def test_smooth_factor_one_reduces_to_endpoint():
    for end in (-1, 1):
        a = F.power_times_smooth(0.7, end, (1.0,))
        b = F.power_endpoint(0.7, end)
        for n in (0, 3, 10, 40):
            assert coeff_exact(a, n) == pytest.approx(coeff_exact(b, n), rel=1e-14)
        assert coeff_asymptotic(a, 40) == pytest.approx(coeff_asymptotic(b, 40), rel=1e-14)


# -- asymptotics ----------------------------------------------------------------


@pytest.mark.parametrize("alpha", [0.5, 1.5, 2.5])
def test_interior_asymptotic_ratio(alpha):
    fam = F.power_interior(alpha, 0.0)
    n = 400
    assert abs(coeff_asymptotic(fam, n) / coeff_exact(fam, n) - 1) < 0.02


@pytest.mark.parametrize("alpha", [0.5, 1.5])
def test_endpoint_asymptotic_ratio(alpha):
    fam = F.power_endpoint(alpha, -1)
    assert abs(coeff_asymptotic(fam, 400) / coeff_exact(fam, 400) - 1) < 0.02


@pytest.mark.parametrize("alpha, theta", [(0.5, 0.0), (1.5, 0.0)])
def test_interior_decay_slope(alpha, theta):
    fam = F.power_interior(alpha, theta)
    ks = np.arange(50, 501, 10)
    slope = fitted_slope(fam, ks)
    assert slope == pytest.approx(-(alpha + 1), abs=0.05)


@pytest.mark.parametrize("alpha", [0.5, 1.5])
def test_endpoint_decay_slope(alpha):
    fam = F.power_endpoint(alpha, -1)
    ks = np.arange(50, 501, 10)
    slope = fitted_slope(fam, ks)
    assert slope == pytest.approx(-(2 * alpha + 1), abs=0.05)


def test_even_power_log_has_no_log_factor():
    fam = F.power_log_interior(2.0, 0.0)
    scaled = [abs(coeff_exact(fam, 2 * k)) * k**3 for k in range(50, 501)]
    assert 0 < min(scaled) and max(scaled) / min(scaled) < 1.05


# -- partial sums and errors ------------------------------------------------------


def test_partial_sum_examples():
    series = CoeffSeries(np.array([0.0, 0.0, 0.0, 1.0, 0.0]), ("exact",) * 5)
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(partial_sum(series, 4, x), 4 * x**3 - 3 * x, atol=1e-15)
    assert partial_sum(CoeffSeries(np.array([3.0, 1.0]), ("exact",) * 2), 0, 0.4) == 1.5


def test_partial_sum_missing_coefficients():
    with pytest.raises(DomainError):
        partial_sum(np.array([1.0, 2.0]), 5, 0.0)


def test_partial_sum_against_numpy():
    rng = np.random.default_rng(7)
    c = rng.standard_normal(30)
    x = np.linspace(-1, 1, 57)
    ref = np.polynomial.chebyshev.chebval(x, np.concatenate([[c[0] / 2], c[1:]]))
    np.testing.assert_allclose(partial_sum(c, 29, x), ref, atol=1e-13)


def test_measured_error_of_polynomial_is_zero():
    t2 = lambda x: 2 * x**2 - 1
    series = chebyshev_series(t2, 4, method="quadrature")
    assert measured_error(t2, series, 3) < 1e-14


def test_absolute_value_truncation_error_rate():
    fam = F.power_interior(1.0, 0.3)
    series = chebyshev_series(fam, 512, method="auto")
    Ns = [32, 64, 128, 256, 512]
    errs = [measured_error(fam, series, N) for N in Ns]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    slope = np.polyfit(np.log(Ns), np.log(errs), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.1)


def test_parseval_matches_direct_l2():
    f = lambda x: np.exp(x) * np.cos(3 * x)
    series = chebyshev_series(f, 40, method="quadrature")
    for N in (4, 8, 12):
        direct = measured_error(f, series, N, norm="l2_chebweight")
        tail = measured_error(f, series, N, norm="l2_chebweight", method="parseval")
        assert tail == pytest.approx(direct, abs=1e-6)


def test_error_grid_contains_endpoints_and_extras():
    g = error_grid(64, extra=(0.3,))
    assert g[0] == -1.0 and g[-1] == 1.0 and 0.3 in g
    assert np.all(np.diff(g) > 0)


def test_series_methods_and_provenance():
    fam = F.power_interior(1.5, 0.4)
    s = chebyshev_series(fam, 6, method="auto")
    assert s.provenance[:2] == ("quadrature", "quadrature")
    assert s.provenance[-1] == "exact"
    with pytest.raises(UnsupportedCaseError):
        chebyshev_series(fam, 6, method="exact")
    with pytest.raises(DomainError):
        chebyshev_series(fam, 6, method="guess")


# -- semi-norms and the identity route -------------------------------------------------


def test_seminorm_examples():
    assert seminorm(F.power_interior(1.5, 0.3), 1, 0.5) == pytest.approx(1.5 * math.sqrt(math.pi), rel=1e-12)
    assert seminorm(F.power_interior(-0.25, 0.0), 0, 0.75) == pytest.approx(2 * math.gamma(0.75), rel=1e-12)


def test_seminorm_weighted_off_centre():
    theta = 0.4
    got = seminorm(F.power_interior(-0.25, theta), 0, 0.75)
    assert got == pytest.approx(2 * (1 - theta**2) ** -0.125 * math.gamma(0.75), rel=1e-9)


def test_seminorm_rejects_inadmissible_index():
    with pytest.raises(DomainError):
        seminorm(F.power_interior(1.5, 0.0), 0, 0.4)


def test_seminorm_of_log_family_is_numeric_and_positive():
    u = seminorm(F.power_log_interior(1.5, 0.0), 1, 0.4)
    assert math.isfinite(u) and u > 0


@pytest.mark.parametrize("alpha, theta", [(1.5, 0.3), (0.5, -0.4), (2.7, 0.1)])
def test_identity_reproduces_interior_closed_form(alpha, theta):
    m = math.floor(alpha + 1)
    s = alpha + 1 - m
    data = frac_data(F.power_interior(alpha, theta), m, s)
    g = math.gamma(alpha + 1)
    assert data.c_right == pytest.approx(g)
    assert data.c_left == pytest.approx((-1) ** (math.floor(alpha) + 1) * g)
    assert data.d_left is None and data.d_right is None
    for n in (m + 1, 7, 20):
        assert coeff_identity_frac(data, n) == pytest.approx(coeff_exact(F.power_interior(alpha, theta), n), rel=1e-10, abs=1e-14)


def test_identity_with_hand_built_data():
    alpha, theta = 1.5, 0.3
    g = math.gamma(alpha + 1)
    data = FracData(2, 0.5, theta, c_left=(-1) ** 2 * g, c_right=g)
    assert coeff_identity_frac(data, 9) == pytest.approx(coeff_exact(F.power_interior(alpha, theta), 9), rel=1e-10)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.5])
@pytest.mark.parametrize("end", [-1, 1])
def test_identity_endpoint_limit(alpha, end):
    m = math.floor(alpha + 1)
    fam = F.power_endpoint(alpha, end)
    data = frac_data(fam, m, alpha + 1 - m)
    assert coeff_identity_frac(data, 6) == pytest.approx(coeff_exact(fam, 6), rel=1e-10)


def test_identity_with_nonzero_fractional_derivative():
    fam = F.power_interior(1.5, 0.3)
    data = frac_data(fam, 1, 0.3)
    assert data.d_left is not None
    assert coeff_identity_frac(data, 5, tol=1e-10) == pytest.approx(coeff_exact(fam, 5), abs=1e-9)


def test_identity_precondition():
    with pytest.raises(DomainError):
        coeff_identity_frac(FracData(1, 0.5, 0.0, c_left=1.0, c_right=1.0), 1)
