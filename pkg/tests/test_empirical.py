import math

import numpy as np
import pytest
import scipy.stats

from horospheres.empirical import (
    empirical_kolmogorov,
    empirical_wasserstein1,
    gaussian_cdf,
    gaussian_pdf,
    k_statistics,
    standardize,
    summarize,
    wasserstein1_samples,
)
from horospheres.sampling import replication_stream

_PHI_ONE = 0.841344746068543  # standard normal CDF at 1, 15 digits


def test_gaussian_cdf_reference_points():
    assert gaussian_cdf(0.0) == pytest.approx(0.5, abs=1e-15)
    assert gaussian_cdf(1.0) == pytest.approx(_PHI_ONE, abs=1e-13)
    assert gaussian_cdf(-1.0) == pytest.approx(1.0 - _PHI_ONE, abs=1e-13)


def test_gaussian_cdf_variance_scaling():
    # variance v rescales the argument by 1/sqrt(v)
    xs = np.linspace(-3.0, 3.0, 13)
    assert np.allclose(gaussian_cdf(xs, 0.5), gaussian_cdf(xs * math.sqrt(2.0)), atol=1e-14)


def test_gaussian_cdf_deep_tail():
    # erfc-based evaluation keeps relative accuracy far out
    got = gaussian_cdf(-10.0)
    want = scipy.stats.norm.cdf(-10.0)
    assert got == pytest.approx(want, rel=1e-11)


def test_gaussian_pdf_normalization():
    xs = np.linspace(-12.0, 12.0, 100001)
    for var in (0.5, 1.0, 4.0):
        mass = np.trapezoid(gaussian_pdf(xs, var), xs)
        assert mass == pytest.approx(1.0, abs=1e-7)


def test_gaussian_invalid_variance():
    with pytest.raises(ValueError):
        gaussian_cdf(0.0, 0.0)
    with pytest.raises(ValueError):
        gaussian_pdf(0.0, -1.0)


def test_standardize_explicit():
    z = standardize([1.0, 3.0], center=1.0, scale=2.0)
    assert np.allclose(z, [0.0, 1.0])


def test_standardize_empirical_is_exact():
    rng = replication_stream(3, 0)
    x = rng.random(100)
    z = standardize(x)
    assert np.mean(z) == pytest.approx(0.0, abs=1e-14)
    assert np.std(z, ddof=1) == pytest.approx(1.0, rel=1e-12)


def test_standardize_argument_pairing():
    with pytest.raises(ValueError):
        standardize([1.0, 2.0], center=0.0)
    with pytest.raises(ValueError):
        standardize([1.0, 2.0], scale=1.0)
    with pytest.raises(ValueError):
        standardize([1.0, 1.0, 1.0])  # zero spread
    with pytest.raises(ValueError):
        standardize([])


def test_kolmogorov_three_point_hand_value():
    # x = (-1, 0, 1) against the standard normal: the sup is 1/3 - Phi(-1)
    got = empirical_kolmogorov(np.array([-1.0, 0.0, 1.0]))
    want = 1.0 / 3.0 - (1.0 - _PHI_ONE)
    assert got == pytest.approx(want, abs=1e-13)


def test_kolmogorov_matches_scipy():
    rng = replication_stream(8, 1)
    x = np.sort(rng.standard_normal(500))
    got = empirical_kolmogorov(x)
    want = scipy.stats.kstest(x, "norm").statistic
    assert got == pytest.approx(want, abs=1e-12)


def test_kolmogorov_requires_sorted():
    with pytest.raises(ValueError):
        empirical_kolmogorov(np.array([1.0, 0.0]))


def test_wasserstein1_single_point():
    # for one sample at x: integral of G below x plus integral of 1-G above,
    # which is x(2G(x) - 1) + 2 var g(x) at variance var
    for x0 in (-1.3, 0.0, 0.7):
        got = empirical_wasserstein1(np.array([x0]))
        g = gaussian_cdf(x0)
        want = x0 * (2.0 * g - 1.0) + 2.0 * gaussian_pdf(x0)
        assert got == pytest.approx(want, abs=1e-13)


def test_wasserstein1_against_discretized_target():
    # oracle: exact W1 between the sample and a million-quantile
    # discretization of the Gaussian target
    rng = replication_stream(8, 2)
    x = np.sort(rng.standard_normal(100))
    got = empirical_wasserstein1(x)
    m = 1_000_000
    q = scipy.stats.norm.ppf((np.arange(m) + 0.5) / m)
    want = scipy.stats.wasserstein_distance(x, q)
    assert got == pytest.approx(want, abs=1e-4)


def test_wasserstein1_against_grid_integration():
    rng = replication_stream(8, 3)
    x = np.sort(rng.standard_normal(50))
    grid = np.union1d(np.linspace(-9.0, 9.0, 400001), x)
    fn = np.searchsorted(x, grid, side="right") / x.size
    integrand = np.abs(fn - gaussian_cdf(grid))
    want = np.trapezoid(integrand, grid)
    got = empirical_wasserstein1(x)
    assert got == pytest.approx(want, abs=5e-5)


def test_wasserstein1_nonstandard_variance():
    # scaling the sample and the target variance together scales the distance
    rng = replication_stream(8, 4)
    x = np.sort(rng.standard_normal(200))
    base = empirical_wasserstein1(x, target_variance=1.0)
    scaled = empirical_wasserstein1(x * 2.0, target_variance=4.0)
    assert scaled == pytest.approx(2.0 * base, rel=1e-10)


def test_wasserstein1_samples_basics():
    a = np.array([0.0, 1.0, 2.0])
    assert wasserstein1_samples(a, a) == 0.0
    assert wasserstein1_samples(a, a + 0.25) == pytest.approx(0.25, abs=1e-15)
    with pytest.raises(ValueError):
        wasserstein1_samples(a, a[:2])


def test_wasserstein1_samples_matches_scipy():
    rng = replication_stream(8, 5)
    a = rng.standard_normal(300)
    b = rng.standard_normal(300) + 0.3
    got = wasserstein1_samples(a, b)
    want = scipy.stats.wasserstein_distance(a, b)
    assert got == pytest.approx(want, rel=1e-12)


def test_k_statistics_hand_values():
    k1, k2, k3, k4 = k_statistics([1.0, 2.0, 3.0, 4.0])
    assert k1 == pytest.approx(2.5, abs=1e-14)
    assert k2 == pytest.approx(5.0 / 3.0, rel=1e-13)
    assert k3 == pytest.approx(0.0, abs=1e-13)
    assert k4 == pytest.approx(-10.0 / 3.0, rel=1e-13)


def test_k_statistics_match_scipy():
    rng = replication_stream(8, 6)
    x = rng.standard_normal(400) ** 2
    k1, k2, k3, k4 = k_statistics(x)
    assert k1 == pytest.approx(scipy.stats.kstat(x, 1), rel=1e-10)
    assert k2 == pytest.approx(scipy.stats.kstat(x, 2), rel=1e-10)
    assert k3 == pytest.approx(scipy.stats.kstat(x, 3), rel=1e-8)
    assert k4 == pytest.approx(scipy.stats.kstat(x, 4), rel=1e-7, abs=1e-8)


def test_k_statistics_needs_four_points():
    with pytest.raises(ValueError):
        k_statistics([1.0, 2.0, 3.0])


def test_summarize_gaussian_sample():
    rng = replication_stream(8, 7)
    x = 3.0 + 2.0 * rng.standard_normal(50_000)
    s = summarize(x, 1.0)
    assert s.n == 50_000
    # empirical standardization forces these exactly
    assert s.mean == pytest.approx(0.0, abs=1e-12)
    assert s.variance == pytest.approx(1.0, rel=1e-10)
    # a Gaussian sample of this size sits close to its own limit
    assert s.d_kol < 1.95 / math.sqrt(s.n)
    assert s.d_wass1 < 0.02
    assert abs(s.k4) < 0.1


def test_summarize_analytic_standardization():
    rng = replication_stream(8, 9)
    x = 3.0 + 2.0 * rng.standard_normal(20_000)
    s = summarize(x, 1.0, center=3.0, scale=2.0)
    assert abs(s.mean) < 4.0 / math.sqrt(20_000)
    assert s.target_variance == 1.0
