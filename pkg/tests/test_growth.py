import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskgrowth import growth
from diskgrowth.errors import EstimatorError, PathError
from diskgrowth.growth import ExponentSample
from diskgrowth.zeros import BoundaryCondition

D, N = BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN
F = Fraction


@pytest.mark.parametrize("n,gamma,m", [
    (8, "2/3", 4), (27, "2/3", 9), (26, "2/3", 8), (1000, "3/4", 177), (20, "4", 160000),
    (2000, "0", 1), (49, "1/2", 7), (48, "1/2", 6), (16, "7/4", 128), (15, "7/4", 114),
])
def test_floor_power_is_exact(n, gamma, m):
    assert growth.floor_power(n, gamma) == m


@given(st.integers(2, 5000), st.sampled_from(["1/2", "2/3", "3/4", "5/4", "3/2", "7/4", "5/2"]))
def test_floor_power_property(n, gamma):
    g = F(gamma)
    m = growth.floor_power(n, g)
    assert m**g.denominator <= n**g.numerator < (m + 1) ** g.denominator


def test_build_path_is_increasing():
    path = growth.build_path("1/2", 2000)
    assert path.n_values[0] == growth.default_n_min(2000) and path.n_values[-1] == 2000
    assert all(b > a for a, b in zip(path.n_values, path.n_values[1:]))
    assert all(b >= a for a, b in zip(path.m_values, path.m_values[1:]))
    assert len(path.n_values) <= growth.DEFAULT_BUDGET


def test_build_path_rejects_bad_input():
    with pytest.raises(PathError):
        growth.build_path(0, 3)
    with pytest.raises(PathError):
        growth.build_path(0, 100, budget=4)
    with pytest.raises(ValueError):
        growth.as_fraction("-1")


# theoretical and conjectured columns of the published tables
DIRICHLET_THEORY = [
    ("0", F(1, 6), None), ("1/2", F(1, 12), None), ("2/3", F(1, 18), None), ("3/4", F(1, 16), None),
    ("1", F(1, 12), F(1, 12)), ("3/2", F(1, 12), F(5, 36)), ("7/4", F(1, 12), F(13, 84)),
    ("2", F(1, 12), F(1, 6)),
]
NEUMANN_CONJ = [("5/4", F(7, 60)), ("3/2", F(5, 36)), ("7/4", F(13, 84)), ("2", F(1, 6)),
                ("5/2", F(11, 60)), ("3", F(7, 36)), ("4", F(5, 24))]


@pytest.mark.parametrize("gamma,lower,conj", DIRICHLET_THEORY)
def test_dirichlet_bounds(gamma, lower, conj):
    b = growth.theoretical_bound(gamma, D)
    assert b.lower == pytest.approx(float(lower), rel=1e-15)
    assert (b.conjectured is None) == (conj is None)
    if conj is not None:
        assert b.conjectured == pytest.approx(float(conj), rel=1e-15)


def test_dirichlet_exact_beyond_three():
    b = growth.theoretical_bound(4, D)
    assert b.exact == b.lower == pytest.approx(5 / 24)


@pytest.mark.parametrize("gamma,conj", NEUMANN_CONJ)
def test_neumann_bounds(gamma, conj):
    b = growth.theoretical_bound(gamma, N)
    assert b.lower == pytest.approx(1 / 12)
    assert b.conjectured == pytest.approx(float(conj), rel=1e-15)
    assert growth.theoretical_bound("1/2", N).lower == pytest.approx(1.5 / 12)


def test_reference_columns():
    ref = growth.REFERENCE_RECIPROCALS
    assert ref[D][F(0)] == 6.08 and ref[D][F(1)] == 11.95 and ref[D][F(4)] == 4.78
    assert ref[N][F(1)] == 10.23 and ref[N][F(2)] == 5.98 and ref[N][F(4)] == 4.83


@given(st.floats(0.01, 0.3), st.floats(-2.0, 2.0))
def test_fit_recovers_synthetic_intercept(a, b):
    lam = [math.exp(t) for t in (8.0, 12.0, 20.0, 35.0, 60.0)]
    samples = [ExponentSample(0, 0, 0.0, l, 0.0, a + b / math.log(l)) for l in lam]
    assert growth.estimate_phi(samples) == pytest.approx(a, abs=1e-9)


def test_fit_errors():
    few = [ExponentSample(0, 0, 0.0, 10.0 * i, 0.0, 0.1) for i in range(1, 4)]
    with pytest.raises(EstimatorError):
        growth.fit_phi(few)
    same = [ExponentSample(0, 0, 0.0, 50.0, 0.0, 0.1)] * 5
    with pytest.raises(EstimatorError):
        growth.fit_phi(same)


def test_row_cap():
    assert growth.row_n_max(4, 2000) == 20
    assert growth.row_n_max(0, 2000) == 2000
    assert growth.floor_power(growth.row_n_max("5/2", 2000), "5/2") <= growth.M_CAP


def test_small_report_and_workers():
    one = growth.gamma_report("1/2", D, 300, budget=8)
    two = growth.gamma_report("1/2", D, 300, budget=8, workers=2)
    assert one == two
    assert all(b.eigenvalue > a.eigenvalue for a, b in zip(one.samples, one.samples[1:]))
    assert one.summary()["gamma"] == "1/2"
    assert not one.ceiling_violations()


def test_gamma0_ratios_approach_one_sixth():
    samples = growth.exponent_samples(growth.build_path(0, 2000, n_min=64))
    gaps = [abs(s.ratio - 1 / 6) for s in samples]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_path_examples():
    assert set(growth.build_path(0, 500).m_values) == {1}
    assert growth.floor_power(10, 1) == 10
    assert growth.floor_power(100, 1.5) == 1000
