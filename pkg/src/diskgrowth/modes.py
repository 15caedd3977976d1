"""L2-normalised cos(n theta) eigenfunctions of the unit disk.

Dirichlet:  F = sqrt(2/pi) J_n(k r) / J_{n+1}(k) cos(n theta)
Neumann:    F = sqrt(2 / (pi (1 - n^2/k^2))) J_n(k r) / J_n(k) cos(n theta)

with sqrt(1/pi) in place of sqrt(2/pi) when n = 0. The prefactor is kept
positive (absolute value of the denominator), which only fixes the
overall sign of the mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .bessel import DEFAULT_LIMITS, _check_args
from .errors import NumericalError
from .zeros import BoundaryCondition, Eigenpair, ModeIndex, find_zero, zero_table

FAST_PATH_MIN = 256  # extremum count above which only the leading extrema are scanned
FAST_PATH_KEEP = 8
_PANEL_NODES = 64
_QUAD_AGREEMENT = 1e-10


@dataclass(frozen=True)
class ModeProfile:
    mode: ModeIndex
    k: float
    norm_const: float
    sup_norm: float
    sup_location: float

    @property
    def eigenvalue(self) -> float:
        return self.k * self.k


@lru_cache(maxsize=64)
def _leggauss(nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    return x, w


def gauss_nodes(a: float, b: float, count: int):
    """At least ``count`` Gauss-Legendre nodes on [a, b], composite above 64."""
    if count <= _PANEL_NODES:
        x, w = _leggauss(count)
        half = 0.5 * (b - a)
        return a + half * (x + 1.0), half * w
    panels = math.ceil(count / _PANEL_NODES)
    x, w = _leggauss(_PANEL_NODES)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    xs = edges[:-1, None] + half * (x[None, :] + 1.0)
    ws = half * w[None, :]
    return xs.ravel(), ws.ravel()


def normalization_constant(mode: ModeIndex, k: float) -> float:
    n = mode.n
    angular = 1.0 / math.pi if n == 0 else 2.0 / math.pi
    if mode.bc is BoundaryCondition.DIRICHLET:
        denom = abs(_kernels.pair(n, k)[1])
        return math.sqrt(angular) / denom
    denom = abs(_kernels.pair(n, k)[0])
    return math.sqrt(angular / (1.0 - (n / k) ** 2)) / denom


class DiskMode:
    """One eigenfunction with its zero resolved; evaluation helpers hang off it."""

    def __init__(self, mode: ModeIndex, *, tol=1e-12, cache=None, limits=DEFAULT_LIMITS,
                 pair: Eigenpair | None = None):
        if not isinstance(mode, ModeIndex):
            mode = ModeIndex(*mode)
        self.mode = mode
        self.limits = limits
        self.tol = tol
        self.pair = pair if pair is not None else find_zero(
            mode.n, mode.m, mode.bc, tol, cache=cache, limits=limits
        )
        self.k = self.pair.k
        self.norm_const = normalization_constant(mode, self.k)
        self._sup = None

    @property
    def n(self) -> int:
        return self.mode.n

    def radial(self, r):
        """norm_const * J_n(k r), the radial factor (theta = 0)."""
        arr = np.asarray(r, dtype=float)
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValueError("radii must lie in [0, 1]")
        xs = _check_args(self.k * arr.reshape(-1), self.limits)
        out = self.norm_const * _kernels.jn_array(self.n, np.ascontiguousarray(xs))
        return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)

    def value(self, r, theta):
        return self.radial(r) * np.cos(self.n * np.asarray(theta, dtype=float))

    def radial_derivative(self, r):
        """d/dr of the radial factor, k * norm_const * J_n'(k r)."""
        arr = np.atleast_1d(np.asarray(r, dtype=float))
        xs = np.ascontiguousarray(self.k * arr)
        jn, jn1 = _kernels.pair_array(self.n, xs)
        with np.errstate(divide="ignore", invalid="ignore"):
            jp = np.where(xs > 0, self.n / xs * jn - jn1, 0.5 if self.n == 1 else 0.0)
        out = self.k * self.norm_const * jp
        return float(out[0]) if np.ndim(r) == 0 else out

    def node_count(self) -> int:
        return max(64, 4 * (self.mode.m + self.n))

    def _radial_integral(self, a, b, nodes, other=None):
        rs, ws = gauss_nodes(a, b, nodes)
        f = self.radial(rs)
        g = f if other is None else other.radial(rs)
        return float(np.sum(ws * f * g * rs))

    def angular_integral(self) -> float:
        return 2.0 * math.pi if self.n == 0 else math.pi

    def mass(self, a: float = 0.0, b: float = 1.0) -> float:
        """L2 mass of the mode over the annulus a <= r <= b, checked at two resolutions."""
        nodes = self.node_count()
        coarse = self._radial_integral(a, b, nodes)
        fine = self._radial_integral(a, b, 2 * nodes)
        if abs(fine - coarse) > _QUAD_AGREEMENT * max(1.0, abs(fine)):
            raise NumericalError(
                f"radial quadrature unresolved for {self.mode}: {coarse!r} vs {fine!r}"
            )
        return self.angular_integral() * fine

    def inner(self, other: "DiskMode") -> float:
        """Integral of the product with a mode of the same n and bc."""
        if other.n != self.n:
            return 0.0
        nodes = 2 * max(self.node_count(), other.node_count())
        return self.angular_integral() * self._radial_integral(0.0, 1.0, nodes, other)

    # --- sup norm -----------------------------------------------------------

    def extrema(self, limit: int | None = None) -> np.ndarray:
        """Positive zeros of J_n' not exceeding k (first ``limit`` of them)."""
        n, m = self.n, self.mode.m
        if self.mode.bc is BoundaryCondition.NEUMANN:
            count = m
        else:
            count = m if n >= 1 else m - 1
        if limit is not None:
            count = min(count, limit)
        if count == 0:
            return np.empty(0)
        ks = np.array([e.k for e in zero_table(n, count, "neumann", self.tol, limits=self.limits)])
        if self.mode.bc is BoundaryCondition.NEUMANN and count == m:
            ks[-1] = self.k
        return ks[ks <= self.k]

    def sup(self) -> tuple[float, float]:
        """(sup |F|, radius where it is attained)."""
        if self._sup is None:
            self._sup = self._compute_sup()
        return self._sup

    def _candidates(self):
        total = self.mode.m
        extrema = None
        if total > FAST_PATH_MIN:
            lead = self.extrema(FAST_PATH_KEEP)
            vals = np.abs(_kernels.jn_array(self.n, lead))
            # licensed only when the leading extremal values decrease strictly
            if np.all(np.diff(vals) < 0):
                extrema = lead
        if extrema is None:
            extrema = self.extrema()
        radii = [r for r in (extrema / self.k).tolist()]
        args = extrema.tolist()
        if self.n == 0:
            radii.insert(0, 0.0)
            args.insert(0, 0.0)
        radii.append(1.0)
        args.append(self.k)
        return np.array(radii), np.array(args)

    def _compute_sup(self):
        radii, args = self._candidates()
        vals = np.abs(_kernels.jn_array(self.n, np.ascontiguousarray(args)))
        best = int(np.argmax(vals))
        best_r, best_v = float(radii[best]), float(vals[best])
        if 0 < best < len(radii) - 1 and radii[best - 1] < best_r < radii[best + 1]:
            # golden-section polish inside the neighbouring extrema
            res = minimize_scalar(
                lambda r: -abs(_kernels.pair(self.n, self.k * r)[0]),
                bracket=(radii[best - 1], best_r, radii[best + 1]), method="golden",
            )
            if radii[best - 1] <= res.x <= radii[best + 1] and -res.fun > best_v:
                best_r, best_v = float(res.x), float(-res.fun)
        return self.norm_const * best_v, best_r

    def profile(self) -> ModeProfile:
        value, where = self.sup()
        return ModeProfile(self.mode, self.k, self.norm_const, value, where)


def _as_mode(mode, **kw) -> DiskMode:
    return mode if isinstance(mode, DiskMode) else DiskMode(mode, **kw)


def eigenfunction_value(mode, r, theta, **kw):
    return _as_mode(mode, **kw).value(r, theta)


def radial_profile(mode, r_grid, **kw):
    return _as_mode(mode, **kw).radial(np.asarray(r_grid, dtype=float))


def l2_norm_check(mode, **kw) -> float:
    """Integral of F^2 over the disk; 1 up to quadrature error."""
    return _as_mode(mode, **kw).mass(0.0, 1.0)


def sup_norm(mode, **kw) -> tuple[float, float]:
    return _as_mode(mode, **kw).sup()


def mode_profile(mode, **kw) -> ModeProfile:
    return _as_mode(mode, **kw).profile()
