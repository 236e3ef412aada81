import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from ubm.checks import herglotz_boundary_gap
from ubm.monotone import (
    UNBOUNDED,
    MonotoneMeasure,
    QuadratureNonConvergence,
    monotone_density,
    monotone_moment,
    monotone_moment_by_quadrature,
    monotone_moments,
    monotone_support,
    support_cos_bound,
)
from ubm.poly import legendre_eval
from ubm.transforms import DomainError

LN4 = 2 * math.log(2)
times = st.floats(min_value=1e-3, max_value=50.0)


def test_moment_examples():
    assert all(monotone_moment(0.0, n) == 1 for n in range(1, 30))
    for t in (0.1, 1.0, 3.7):
        assert monotone_moment(t, 1) == pytest.approx(math.exp(-t / 2), abs=1e-15)
    assert monotone_moment(LN4, 2) == pytest.approx(-0.25, abs=1e-15)
    with pytest.raises(ValueError):
        monotone_moment(1.0, 0)


@given(times)
def test_vector_matches_scalar(t):
    vec = monotone_moments(t, 25)
    ref = [monotone_moment(t, n) for n in range(1, 26)]
    assert np.allclose(vec, ref, atol=1e-14)
    assert np.all(np.abs(vec) <= 1 + 1e-14)


def test_support():
    assert monotone_support(0.0) == (0.0, 0.0)
    lo, hi = monotone_support(LN4)
    assert hi == pytest.approx(math.pi / 2, abs=1e-12) and lo == -hi
    assert monotone_support(200.0)[1] > 3.1
    assert support_cos_bound(0.0) == 1
    assert support_cos_bound(200.0) == pytest.approx(-1)
    with pytest.raises(DomainError):
        monotone_support(-1.0)


def test_support_small_t_keeps_precision():
    # half-angle ~ sqrt(2t) for small t
    t = 1e-12
    assert monotone_support(t)[1] == pytest.approx(math.sqrt(2 * t), rel=1e-6)


def test_density_examples():
    assert monotone_density(LN4, 0.0) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert monotone_density(200.0, 1.0) == pytest.approx(1.0, abs=1e-3)
    assert monotone_density(1.0, 2.5) == 0.0
    with pytest.raises(DomainError):
        monotone_density(0.0, 0.0)


def test_density_endpoint_is_unbounded():
    # pick t so that cos(1.0) is exactly the support bound
    th = 1.0
    t = -2 * math.log((1 + math.cos(th)) / 2)
    assert support_cos_bound(t) == math.cos(th)
    assert monotone_density(t, th) == UNBOUNDED
    assert monotone_density(t, -th) == UNBOUNDED
    assert math.isfinite(monotone_density(t, th - 1e-9))


@given(times, st.floats(min_value=-math.pi, max_value=math.pi))
def test_density_even(t, th):
    assert monotone_density(t, th) == monotone_density(t, -th)


@pytest.mark.parametrize("t", [0.3, 1.0, 4.0])
def test_density_integrates_to_one(t):
    hi = monotone_support(t)[1]
    val, _ = integrate.quad(lambda th: monotone_density(t, th), -hi, hi, limit=200)
    assert val / (2 * math.pi) == pytest.approx(1.0, abs=1e-7)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 4.0])
def test_quadrature_matches_legendre(t):
    assert monotone_moment_by_quadrature(t, 0) == pytest.approx(1, abs=1e-8)
    for n in range(1, 21):
        q = monotone_moment_by_quadrature(t, n)
        assert abs(q.imag) < 1e-10
        assert abs(q - monotone_moment(t, n)) < 1e-8


def test_quadrature_against_scipy_on_density():
    # second route: adaptive quadrature of the density itself
    t, n = 1.0, 5
    hi = monotone_support(t)[1]
    val, _ = integrate.quad(
        lambda th: math.cos(n * th) * monotone_density(t, th), -hi, hi, limit=400
    )
    assert abs(val / (2 * math.pi) - monotone_moment_by_quadrature(t, n).real) < 1e-7


def test_quadrature_errors():
    with pytest.raises(DomainError):
        monotone_moment_by_quadrature(0.0, 1)
    with pytest.raises(QuadratureNonConvergence):
        monotone_moment_by_quadrature(1.0, 200, grid=8)


def test_haar_limit():
    for n in range(1, 11):
        assert abs(monotone_moment(200.0, n)) < 1e-20
    for th in np.linspace(-3, 3, 61):
        assert abs(monotone_density(200.0, th) - 1) < 1e-3


def test_legendre_at_minus_one_cancels():
    for n in range(1, 20):
        assert legendre_eval(n, -1.0) + legendre_eval(n - 1, -1.0) == 0


@pytest.mark.parametrize("t,theta", [(0.5, 0.3), (1.0, 0.0), (2.0, 1.2), (4.0, -2.0)])
def test_herglotz_boundary_limit(t, theta):
    assert herglotz_boundary_gap(t, theta) < 1e-3


@settings(max_examples=30)
@given(times, st.integers(1, 40))
def test_hausdorff_bound(t, n):
    assert abs(monotone_moment(t, n)) <= 1 + 1e-14


def test_measure_wrapper():
    m = MonotoneMeasure(LN4)
    assert m.support_cos_bound == pytest.approx(0.0, abs=1e-15)
    assert m.support_half_angle == pytest.approx(math.pi / 2)
    assert m.moment(1) == pytest.approx(0.5)
    assert m.density(0.0) == pytest.approx(math.sqrt(2))
