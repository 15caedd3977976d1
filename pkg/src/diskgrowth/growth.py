"""Growth exponents log ||F||_inf / log lambda along paths m = floor(n^gamma)."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bessel import DEFAULT_LIMITS
from .errors import CapacityError, EstimatorError, PathError
from .modes import DiskMode
from .zeros import BoundaryCondition, ModeIndex

GRIESER_CEILING = 0.25
BOUND_SLACK = 0.02
DEFAULT_BUDGET = 12
M_CAP = 160_000  # largest m a table row may reach (gamma = 4 stops at n = 20)
MIN_SAMPLES = 4

DIRICHLET_GAMMAS = tuple(Fraction(g) for g in ("0", "1/2", "2/3", "3/4", "1", "3/2", "7/4", "2", "4"))
NEUMANN_GAMMAS = tuple(Fraction(g) for g in ("1", "5/4", "3/2", "7/4", "2", "5/2", "3", "4"))

# published values, stored as reciprocals 1/x of the measured ratio
REFERENCE_RECIPROCALS = {
    BoundaryCondition.DIRICHLET: dict(zip(DIRICHLET_GAMMAS, (6.08, 9.96, 11.5, 13.03, 11.95, 7.19, 6.45, 5.99, 4.78))),
    BoundaryCondition.NEUMANN: dict(zip(NEUMANN_GAMMAS, (10.23, 8.16, 7.06, 6.40, 5.98, 5.46, 5.16, 4.83))),
}


def as_fraction(gamma) -> Fraction:
    """Exact rational for gamma: "2/3", Fraction, int or float (float snapped to denominators <= 10^6)."""
    if isinstance(gamma, Fraction):
        g = gamma
    elif isinstance(gamma, str):
        g = Fraction(gamma.strip())
    else:
        g = Fraction(gamma).limit_denominator(10**6)
    if g < 0:
        raise ValueError("gamma must be >= 0")
    return g


def floor_power(n: int, gamma) -> int:
    """max(1, floor(n^gamma)) computed exactly in integers."""
    g = as_fraction(gamma)
    p, q = g.numerator, g.denominator
    target = n**p
    m = int(math.floor(math.exp(p / q * math.log(n)))) if n > 1 else 1
    while m**q > target:
        m -= 1
    while (m + 1) ** q <= target:
        m += 1
    return max(1, m)


def default_n_min(n_max: int) -> int:
    """Lower end of the default grid: the top 1.5 decades, never below 8."""
    return max(8, round(n_max / 32))


@dataclass(frozen=True)
class GammaPath:
    gamma: Fraction
    n_values: tuple
    m_values: tuple
    bc: BoundaryCondition

    def modes(self):
        return [ModeIndex(n, m, self.bc) for n, m in zip(self.n_values, self.m_values)]


def build_path(gamma, n_max: int, bc=BoundaryCondition.DIRICHLET, budget: int = DEFAULT_BUDGET,
               n_min: int | None = None) -> GammaPath:
    """Up to ``budget`` geometrically spaced n in [n_min, n_max] with m = floor(n^gamma).

    Points are kept only while both n and m move forward, which makes the
    eigenvalues strictly increasing (k_{n,m} grows in n and in m).
    """
    g = as_fraction(gamma)
    bc = BoundaryCondition(bc)
    if n_max < 4:
        raise PathError("n_max must be >= 4")
    if budget < 8:
        raise PathError("budget must be >= 8")
    lo = default_n_min(n_max) if n_min is None else max(2, int(n_min))
    if lo > n_max:
        raise PathError(f"empty path: n_min {lo} exceeds n_max {n_max}")
    grid = np.geomspace(lo, n_max, budget)
    ns, ms = [], []
    for n in sorted(set(int(round(x)) for x in grid)):
        m = floor_power(n, g)
        if ns and not (n > ns[-1] and m >= ms[-1]):
            continue
        ns.append(n)
        ms.append(m)
    if not ns:
        raise PathError("empty path after filtering")
    return GammaPath(g, tuple(ns), tuple(ms), bc)


@dataclass(frozen=True)
class ExponentSample:
    n: int
    m: int
    k: float
    eigenvalue: float
    sup_norm: float
    ratio: float


def _sample(args) -> ExponentSample:
    n, m, bc, tol, cache, limits = args
    try:
        mode = DiskMode(ModeIndex(n, m, bc), tol=tol, cache=cache, limits=limits)
    except CapacityError as exc:
        raise CapacityError(f"(n={n}, m={m}): {exc}") from None
    value, _ = mode.sup()
    lam = mode.pair.eigenvalue
    return ExponentSample(n, m, mode.k, lam, value, math.log(value) / math.log(lam))


def exponent_samples(path: GammaPath, *, tol=1e-12, cache=None, limits=DEFAULT_LIMITS,
                     workers: int = 1) -> list[ExponentSample]:
    jobs = [(n, m, path.bc, tol, cache, limits) for n, m in zip(path.n_values, path.m_values)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_sample, jobs))
    else:
        out = [_sample(j) for j in jobs]
    return sorted(out, key=lambda s: s.n)


@dataclass(frozen=True)
class PhiFit:
    phi: float  # extrapolated intercept a of ratio = a + b / log(lambda)
    slope: float
    raw_last: float  # ratio at the largest lambda


def fit_phi(samples) -> PhiFit:
    if len(samples) < MIN_SAMPLES:
        raise EstimatorError(f"need at least {MIN_SAMPLES} samples, got {len(samples)}")
    lam = np.array([s.eigenvalue for s in samples], dtype=float)
    ratio = np.array([s.ratio for s in samples], dtype=float)
    x = 1.0 / np.log(lam)
    if np.ptp(x) <= 1e-12 * np.max(np.abs(x)):
        raise EstimatorError("degenerate fit: all eigenvalues equal")
    design = np.column_stack([np.ones_like(x), x])
    (a, b), *_ = np.linalg.lstsq(design, ratio, rcond=None)
    return PhiFit(float(a), float(b), float(ratio[int(np.argmax(lam))]))


def estimate_phi(samples) -> float:
    return fit_phi(samples).phi


@dataclass(frozen=True)
class Bounds:
    lower: float
    conjectured: float | None = None
    exact: float | None = None


def theoretical_bound(gamma, bc=BoundaryCondition.DIRICHLET) -> Bounds:
    g = as_fraction(gamma)
    bc = BoundaryCondition(bc)
    wide = float(Fraction(1, 4) - 1 / (6 * g)) if g > 0 else None
    if bc is BoundaryCondition.DIRICHLET:
        if g < 1:
            return Bounds(float(max((1 - g) / 6, g / 12)))
        if g <= 3:
            return Bounds(1 / 12, conjectured=wide if g < 3 else None)
        return Bounds(wide, exact=wide)
    if g < 1:
        return Bounds(float((2 - g) / 12))
    return Bounds(1 / 12, conjectured=wide)


@dataclass(frozen=True)
class GammaReport:
    gamma: Fraction
    bc: BoundaryCondition
    samples: tuple
    phi_estimate: float
    slope: float
    raw_last: float
    theoretical_lower: float
    conjectured: float | None
    exact: float | None

    def lower_ok(self) -> bool:
        return self.phi_estimate >= self.theoretical_lower - BOUND_SLACK

    def ceiling_violations(self) -> list[ExponentSample]:
        return [s for s in self.samples if s.ratio > GRIESER_CEILING + BOUND_SLACK]

    def summary(self) -> dict:
        return {
            "gamma": str(self.gamma),
            "bc": self.bc.value,
            "n_values": [s.n for s in self.samples],
            "phi_estimate": self.phi_estimate,
            "fit_slope": self.slope,
            "raw_last": self.raw_last,
            "theoretical_lower": self.theoretical_lower,
            "conjectured": self.conjectured,
            "exact": self.exact,
            "lower_ok": self.lower_ok(),
            "ceiling_ok": not self.ceiling_violations(),
        }


def gamma_report(gamma, bc=BoundaryCondition.DIRICHLET, n_max: int = 2000, *, budget=DEFAULT_BUDGET,
                 n_min=None, tol=1e-12, cache=None, limits=DEFAULT_LIMITS, workers=1) -> GammaReport:
    path = build_path(gamma, n_max, bc, budget, n_min)
    samples = exponent_samples(path, tol=tol, cache=cache, limits=limits, workers=workers)
    fit = fit_phi(samples)
    bounds = theoretical_bound(path.gamma, path.bc)
    return GammaReport(path.gamma, path.bc, tuple(samples), fit.phi, fit.slope, fit.raw_last,
                       bounds.lower, bounds.conjectured, bounds.exact)


def row_n_max(gamma, n_max: int) -> int:
    """n_max lowered so that floor(n^gamma) stays within M_CAP."""
    g = as_fraction(gamma)
    if g == 0:
        return n_max
    top = min(n_max, int(M_CAP ** (1.0 / float(g))) + 1)
    while top > 1 and floor_power(top, g) > M_CAP:
        top -= 1
    return top


@dataclass(frozen=True)
class TableRow:
    gamma: Fraction
    bc: BoundaryCondition
    status: str  # "ok" or "skipped"
    n_max: int
    report: GammaReport | None = None
    reference_reciprocal: float | None = None
    reason: str = ""
    bounds: Bounds = field(default=Bounds(float("nan")))


def reproduce_table(bc=BoundaryCondition.DIRICHLET, n_max: int = 2000, *, budget=DEFAULT_BUDGET,
                    tol=1e-12, cache=None, limits=DEFAULT_LIMITS, workers=1) -> list[TableRow]:
    bc = BoundaryCondition(bc)
    gammas = DIRICHLET_GAMMAS if bc is BoundaryCondition.DIRICHLET else NEUMANN_GAMMAS
    rows = []
    for g in gammas:
        ref = REFERENCE_RECIPROCALS[bc].get(g)
        bounds = theoretical_bound(g, bc)
        top = row_n_max(g, n_max)
        try:
            if top < 4:
                raise PathError(f"m = floor(n^{g}) exceeds {M_CAP} for every n >= 4")
            report = gamma_report(g, bc, top, budget=budget, tol=tol, cache=cache,
                                  limits=limits, workers=workers)
        except (CapacityError, PathError, EstimatorError) as exc:
            rows.append(TableRow(g, bc, "skipped", top, None, ref, str(exc), bounds))
            continue
        rows.append(TableRow(g, bc, "ok", top, report, ref, "", bounds))
    return rows
