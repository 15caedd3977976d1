import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from diskgrowth import bessel
from diskgrowth.bessel import EvalRegime, Limits
from diskgrowth.errors import CapacityError, DomainError

# (n, x, J_n(x)) from the series oracle at 40+ digits
FROZEN = [
    (0, 0.5, 0.9384698072408129),
    (0, 2.5, -0.048383776468198),
    (1, 1.0, 0.4400505857449335),
    (1, 30.0, -0.11875106261662294),
    (2, 0.01, 1.2499895833658854e-05),
    (5, 5.0, 0.26114054612017007),
    (10, 3.0, 1.2928351645715883e-05),
    (10, 100.0, -0.05473217693547201),
    (20, 19.0, 0.11164834708850507),
    (50, 60.0, -0.13798273148535212),
    (100, 100.0, 0.09636667329586156),
    (100, 250.0, 0.04089958980654092),
    (3, 1234.5, -0.018173507062042765),
    (0, 4000.25, -0.012319078859481645),
    (7, 0.0, 0.0),
]


@pytest.mark.parametrize("n,x,ref", FROZEN)
def test_reference_matches_frozen_oracle(n, x, ref):
    assert bessel.bessel_j(n, x) == pytest.approx(ref, rel=1e-13, abs=1e-16)


def test_small_argument_examples():
    assert bessel.bessel_j(0, 0.0) == 1.0
    assert bessel.bessel_j(1, 0.0) == 0.0
    assert bessel.bessel_j(0, 1e-8) == pytest.approx(1.0, abs=1e-15)


def test_array_input_keeps_shape():
    xs = np.linspace(0.0, 50.0, 12).reshape(3, 4)
    out = bessel.bessel_j(4, xs)
    assert out.shape == (3, 4)
    assert out[1, 2] == bessel.bessel_j(4, float(xs[1, 2]))


@given(st.integers(0, 60), st.floats(0.01, 300.0))
def test_against_live_oracle(n, x):
    ref = float(oracles.jn(n, x))
    amp = max(abs(ref), 1e-3 * min(1.0, (1 + n) ** (-1 / 3)))
    assert abs(bessel.bessel_j(n, x) - ref) <= 1e-12 * amp


@given(st.integers(1, 200), st.floats(0.1, 5000.0))
def test_three_term_recurrence(n, x):
    lo, mid, hi = (bessel.bessel_j(k, x) for k in (n - 1, n, n + 1))
    scale = max(abs(lo), abs(hi), abs(mid), 1e-300)
    assert abs(lo + hi - 2 * n / x * mid) <= 1e-11 * scale * max(1.0, n / x)


def test_negative_argument_rejected():
    with pytest.raises(DomainError):
        bessel.bessel_j(3, -2.0)


def test_limits():
    with pytest.raises(DomainError):
        bessel.bessel_j(-1, 1.0)
    with pytest.raises(CapacityError):
        bessel.bessel_j(11, 1.0, limits=Limits(n_cap=10))
    with pytest.raises(CapacityError):
        bessel.bessel_j(1, 2e9)
    with pytest.raises(DomainError):
        bessel.bessel_j(1, float("nan"))


@pytest.mark.parametrize("n,x", [(0, 0.3), (1, 1.7), (7, 5.5), (20, 13.0), (60, 250.0)])
def test_derivative_against_oracle(n, x):
    ref = float(oracles.jn_prime(n, x))
    assert bessel.bessel_j_prime(n, x) == pytest.approx(ref, rel=1e-12, abs=1e-16)


def test_second_derivative_solves_bessel_equation():
    n, x = 6, 9.25
    j, jp, jpp = bessel.bessel_j(n, x), bessel.bessel_j_prime(n, x), bessel.bessel_j_second(n, x)
    assert x * x * jpp + x * jp + (x * x - n * n) * j == pytest.approx(0.0, abs=1e-12)


def test_real_order_matches_integer():
    assert bessel.bessel_j_real(5.0, 7.5) == pytest.approx(bessel.bessel_j(5, 7.5), rel=1e-12)
    assert bessel.bessel_j_real(2.5, 3.0) == pytest.approx(float(mp.besselj(2.5, 3.0)), rel=1e-12)


def test_explicit_regimes():
    assert bessel.bessel_j(3, 2.0, EvalRegime.POWER_SERIES) == pytest.approx(bessel.bessel_j(3, 2.0), rel=1e-14)
    x = 2.0 * bessel.jacobi_threshold(2)
    assert bessel.bessel_j(2, x, "jacobi_large") == pytest.approx(bessel.bessel_j(2, x), abs=1e-4)
    with pytest.raises(DomainError):
        bessel.bessel_j(2, 10.0, EvalRegime.JACOBI_LARGE)


@pytest.mark.parametrize("n", [1, 2, 5, 30, 100])
def test_landau_and_krasikov_bounds(n):
    t = bessel.krasikov_threshold(n)
    xs = np.linspace(t, 2000.0, 5001)[1:]
    j = bessel.bessel_j(n, xs)
    assert np.all(j * j <= bessel.krasikov_bound(n, xs))
    assert np.all(np.abs(bessel.bessel_j(n, np.linspace(0, 2000, 20001))) <= bessel.landau_bound(n))


def test_landau_constant():
    assert bessel.landau_bound(8) == pytest.approx(0.674885 / 2)


@pytest.mark.parametrize("n,z", [(50, 0.5), (100, 0.8), (200, 0.9), (400, 0.3)])
def test_meissel_one_relative_accuracy(n, z):
    ref = bessel.bessel_j(n, n * z)
    assert bessel.meissel_one(n, z) == pytest.approx(ref, rel=1e-2)


@pytest.mark.parametrize("n,z", [(50, 1.5), (100, 2.0), (200, 3.0)])
def test_meissel_two_absolute_accuracy(n, z):
    assert abs(bessel.meissel_two(n, z) - bessel.bessel_j(n, n * z)) <= 1e-2


def test_meissel_domain():
    with pytest.raises(DomainError):
        bessel.meissel_one(10, 1.0)
    with pytest.raises(DomainError):
        bessel.meissel_two(10, 0.9)


@pytest.mark.parametrize("n", [0, 1, 3, 10])
def test_jacobi_within_reported_error(n):
    for x in np.geomspace(bessel.jacobi_threshold(n) * 1.01, 1e7, 15):
        res = bessel.jacobi_asym(n, float(x))
        assert abs(res.value - bessel.bessel_j(n, float(x))) <= res.error_term


def test_diagonal_scaling_is_cube_root():
    # J_n(n) n^(1/3) settles near 0.4473 for large n
    vals = [bessel.bessel_j(n, float(n)) * n ** (1 / 3) for n in (100, 1000, 10000)]
    assert max(vals) - min(vals) < 2e-5
    assert vals[-1] == pytest.approx(0.447307291133768, rel=1e-10)  # series oracle at n = 10^4
    assert bessel.cauchy_diag(1000) == pytest.approx(bessel.CAUCHY_CONSTANT * 1000 ** (-1 / 3))


def test_airy_helpers():
    a10 = float(mp.airyaizero(10))
    assert bessel.airy_ai_negative(12.0) == pytest.approx(float(mp.airyai(-12.0)), rel=1e-8)
    assert bessel.airy_zero_estimate(10) == pytest.approx(-a10, rel=2e-2)
    lo, hi = 12.5, 13.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if bessel.airy_ai_negative(lo) * bessel.airy_ai_negative(mid) <= 0:
            hi = mid
        else:
            lo = mid
    assert lo == pytest.approx(12.828776752865757, abs=1e-8)


def test_meissel_exponent_sign():
    assert bessel.meissel_exponent(0.5) < 0
    assert abs(bessel.meissel_exponent(1.0 - 1e-9)) < 1e-12
    with pytest.raises(DomainError):
        bessel.meissel_exponent(1.0)


def test_zero_and_derivative_examples():
    assert abs(bessel.bessel_j(0, 2.404825557695773)) < 1e-10
    assert abs(bessel.bessel_j_prime(0, 3.831705970207512)) < 1e-9
    assert abs(bessel.bessel_j_prime(1, 1.841183781340659)) < 1e-9
    assert bessel.bessel_j_prime(2, 0.001) > 0
    assert bessel.bessel_j(3, 0.0) == 0.0


def test_asymptotic_examples():
    assert bessel.bessel_j(50, 25.0, "meissel_one") == pytest.approx(bessel.bessel_j(50, 25.0), rel=1e-3)
    assert abs(bessel.meissel_two(100, 1.5) - bessel.bessel_j(100, 150.0)) < 1e-3
    assert abs(bessel.meissel_two(50, 1.1) - bessel.bessel_j(50, 55.0)) < 1e-2
    assert abs(bessel.meissel_two(200, 2.0)) <= bessel.meissel_two_amplitude(200, 2.0)
    assert abs(bessel.jacobi_asym(0, 1e4).value - bessel.bessel_j(0, 1e4)) < 1e-4
    assert abs(bessel.jacobi_asym(5, 1e5).value - bessel.bessel_j(5, 1e5)) < 1e-6
    assert abs(bessel.jacobi_asym(2, (4000 + 0.75) * math.pi).value) < 1e-12


def test_meissel_decay_in_n():
    assert bessel.meissel_exponent(0.1) < 0 and bessel.meissel_exponent(0.9) < 0
    assert abs(bessel.meissel_one(200, 0.5)) < abs(bessel.meissel_one(100, 0.5)) ** 1.9


def test_constant_examples():
    assert bessel.cauchy_diag(8 * 37) / bessel.cauchy_diag(37) == pytest.approx(0.5, rel=1e-15)
    assert 0 < bessel.cauchy_diag(100) < bessel.landau_bound(100)
    assert bessel.landau_bound(1) == 0.674885
    assert bessel.krasikov_threshold(1) == pytest.approx(math.sqrt(15 + 15 ** (2 / 3)) / 2)
    assert bessel.krasikov_bound(1, 100.0) > bessel.bessel_j(1, 100.0) ** 2
    assert bessel.krasikov_bound(3, 1e7) * math.pi * 1e7 / 2 == pytest.approx(1.0, rel=1e-6)
    assert bessel.airy_zero_estimate(1) == pytest.approx(2.81078, abs=1e-5)
    assert bessel.airy_zero_estimate(2) == pytest.approx((3 * math.pi) ** (2 / 3))
    with pytest.raises(DomainError):
        bessel.krasikov_bound(1, 1.0)


def test_grid_max_under_landau():
    xs = np.linspace(0.0, 200.0, 200_001)
    assert np.max(np.abs(bessel.bessel_j(20, xs))) < bessel.landau_bound(20)
