import math

import numpy as np
import pytest

import stablab


def test_cauchy_and_gauss_closed_forms():
    cauchy = stablab.StableParams(1.0)
    for x in (-3.0, 0.2, 7.0):
        assert stablab.stable_cdf(x, cauchy) == pytest.approx(0.5 + math.atan(x) / math.pi, abs=1e-10)
    gauss = stablab.StableParams(2.0)
    assert stablab.stable_cdf(1.0, gauss) == pytest.approx(0.5 * math.erfc(-0.5), abs=1e-10)
    assert stablab.stable_cf(0.7, stablab.StableParams(1.5)) == pytest.approx(math.exp(-(0.7**1.5)))


def test_tail_constant():
    p = stablab.StableParams(1.5, 2.0)
    expected = 2.0**1.5 * math.gamma(1.5) * math.sin(0.75 * math.pi) / math.pi
    assert stablab.tail_constant(p) == pytest.approx(expected, rel=1e-14)


def test_heavy_tailed_model():
    limit = stablab.StableParams(1.5)
    model = stablab.DoaModel.matched(limit, gamma=0.6, a=1.0)
    assert model.c == pytest.approx(stablab.tail_constant(limit))
    for u in (0.01, 0.3, 0.5, 0.9, 0.9999):
        assert model.cdf(model.quantile(u)) == pytest.approx(u, abs=1e-12)
    report = stablab.verify_strong_doa(model, 2.0)
    assert report.within_bound and report.condition_met
    with pytest.raises(stablab.DomainError):
        stablab.DoaModel(alpha=2.5, c=1.0, gamma=0.6, a=1.0)


def test_samples_are_seeded_and_thread_independent():
    model = stablab.DoaModel.matched(stablab.StableParams(1.5), gamma=0.6, a=1.0)
    a = stablab.ensemble(model, n=64, seed=7, m=4000, threads=1)
    b = stablab.ensemble(model, n=64, seed=7, m=4000, threads=4)
    assert isinstance(a, np.ndarray) and a.shape == (4000,)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, stablab.ensemble(model, n=64, seed=8, m=4000))


def test_distances():
    limit = stablab.StableParams(1.5)
    x = stablab.stable_sample(limit, 20000, seed=3)
    assert stablab.wasserstein1(x, x + 0.25) == pytest.approx(0.25, rel=1e-12)
    assert stablab.kappa_r(x, limit, 2.0, window=10.0) < 0.5
    assert 0.0 <= stablab.cf_distance(x, limit, 1.0) < 0.05
    assert stablab.power_gap(1.3, -0.4, 1.7) >= 0.0
    assert stablab.rate_constant(stablab.DoaModel.matched(limit, 0.6, 1.0), limit) == pytest.approx(19.70248, rel=1e-5)
    bad = stablab.DoaModel(alpha=1.5, c=0.25, gamma=0.4, a=1.0)
    with pytest.raises(stablab.DivergenceError):
        stablab.rate_constant(bad, limit)


def test_slope_fit():
    n = [16, 32, 64, 128]
    fit = stablab.fit_slope(n, [3.0 * k**-0.25 for k in n])
    assert fit.slope == pytest.approx(-0.25, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    assert stablab.theoretical_slope(1.5, 2.0) == pytest.approx(-1.0 / 3.0)
