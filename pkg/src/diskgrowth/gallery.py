"""Whispering-gallery diagnostics for modes with m < n.

For such a mode the turning radius rho = n/k splits the disk: J_n(k r)
is exponentially small for r well inside rho, and the L2 mass sits in
the annulus rho <= r <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .errors import DomainError, NumericalError
from .growth import as_fraction, floor_power
from .modes import DiskMode
from .zeros import C1, BoundaryCondition, ModeIndex

DEFAULT_MARGIN = 0.02
MASS_TOLERANCE = 1e-6
_GRID = 257


@dataclass(frozen=True)
class GalleryProfile:
    mode: ModeIndex
    k: float
    alpha: float
    rho: float
    interior_sup: float  # sup |F| over r <= rho (1 - margin)
    annulus_mass: float  # L2 mass over rho <= r <= 1
    interior_mass: float  # L2 mass over r < rho
    outer_mass: float  # L2 mass over rho (1 - margin) <= r <= 1
    margin: float

    @property
    def annulus_width(self) -> float:
        return 1.0 - self.rho

    @property
    def n(self) -> int:
        return self.mode.n


def _interior_sup(dm: DiskMode, r_max: float):
    rs = np.linspace(0.0, r_max, _GRID)
    vals = np.abs(dm.radial(rs))
    i = int(np.argmax(vals))
    best_r, best_v = float(rs[i]), float(vals[i])
    if 0 < i < _GRID - 1:
        # golden-section polish between the neighbouring grid points
        res = minimize_scalar(lambda r: -abs(dm.norm_const * _kernels.pair(dm.n, dm.k * r)[0]),
                              bracket=(rs[i - 1], rs[i], rs[i + 1]), method="golden")
        if rs[i - 1] <= res.x <= rs[i + 1] and -res.fun > best_v:
            best_r, best_v = float(res.x), float(-res.fun)
    return best_v, best_r


def gallery_profile(mode, margin: float = DEFAULT_MARGIN, **kw) -> GalleryProfile:
    dm = mode if isinstance(mode, DiskMode) else DiskMode(mode, **kw)
    n, m = dm.n, dm.mode.m
    if not 0.0 <= margin <= 0.1:
        raise DomainError("margin must lie in [0, 0.1]")
    if not m < n:
        raise DomainError(f"gallery regime needs m < n, got n={n}, m={m}")
    if dm.k <= n:
        raise NumericalError(f"zero k={dm.k!r} does not exceed n={n}")
    alpha = dm.k / n
    rho = 1.0 / alpha
    edge = rho * (1.0 - margin)
    sup, _ = _interior_sup(dm, edge)
    inner = dm.mass(0.0, rho)
    annulus = dm.mass(rho, 1.0)
    if abs(inner + annulus - 1.0) > MASS_TOLERANCE:
        raise NumericalError(f"mass split {inner!r} + {annulus!r} is not 1 for {dm.mode}")
    outer = dm.mass(edge, 1.0)
    return GalleryProfile(dm.mode, dm.k, alpha, rho, sup, annulus, inner, outer, margin)


@dataclass(frozen=True)
class DecayFit:
    rate: float  # c in log(interior_sup) ~ C - c n
    offset: float
    r_squared: float


def fit_exponential_decay(profiles) -> DecayFit:
    """Least-squares line through (n, log interior_sup)."""
    ns = np.array([p.n for p in profiles], dtype=float)
    logs = np.log(np.array([p.interior_sup for p in profiles], dtype=float))
    if len(ns) < 3:
        raise ValueError("need at least three profiles")
    slope, offset = np.polyfit(ns, logs, 1)
    resid = logs - (slope * ns + offset)
    total = np.sum((logs - logs.mean()) ** 2)
    r2 = 1.0 - float(np.sum(resid**2) / total) if total > 0 else 0.0
    return DecayFit(float(-slope), float(offset), r2)


def predicted_width(n: int, gamma) -> float:
    """Leading-order annulus width C1 n^(2(gamma - 1)/3)."""
    return C1 * n ** (2.0 * (float(as_fraction(gamma)) - 1.0) / 3.0)


@dataclass(frozen=True)
class DecaySweep:
    gamma: object
    bc: BoundaryCondition
    profiles: tuple
    violations: tuple  # human-readable notes on monotonicity failures

    @property
    def ok(self) -> bool:
        return not self.violations


def decay_sweep(gamma, bc=BoundaryCondition.DIRICHLET, n_values=(25, 50, 100, 200, 400),
                margin: float = DEFAULT_MARGIN, **kw) -> DecaySweep:
    g = as_fraction(gamma)
    if not g < 1:
        raise DomainError("gallery sweeps need gamma < 1")
    bc = BoundaryCondition(bc)
    profiles = [
        gallery_profile(ModeIndex(n, floor_power(n, g), bc), margin, **kw)
        for n in sorted(set(int(v) for v in n_values))
    ]
    notes = []
    for a, b in zip(profiles, profiles[1:]):
        if not b.interior_sup <= a.interior_sup:
            notes.append(f"interior_sup rises from n={a.n} to n={b.n}: {a.interior_sup:.6g} -> {b.interior_sup:.6g}")
        if not b.annulus_mass >= a.annulus_mass:
            notes.append(f"annulus_mass falls from n={a.n} to n={b.n}: {a.annulus_mass:.6g} -> {b.annulus_mass:.6g}")
    return DecaySweep(g, bc, tuple(profiles), tuple(notes))


def width_errors(sweep: DecaySweep) -> list[float]:
    """Relative gap |(1 - rho) - C1 n^(2(gamma-1)/3)| / (1 - rho) along a sweep."""
    return [
        abs(p.annulus_width - predicted_width(p.n, sweep.gamma)) / p.annulus_width
        for p in sweep.profiles
    ]


def mass_defect(profile: GalleryProfile) -> float:
    return abs(profile.interior_mass + profile.annulus_mass - 1.0)

