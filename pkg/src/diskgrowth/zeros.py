"""Zeros k_{n,m} of J_n and k'_{n,m} of J_n' with certified brackets.

A bracket is accepted only after its endpoints show opposite signs and a
sub-grid of step pi/8 shows exactly one sign change inside it (zeros of
J_n and of J_n' are never closer than pi/2, so the sub-grid cannot step
over a pair). Refinement is bisection followed by bracket-safeguarded
Newton, vectorised over many zeros at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bessel import DEFAULT_LIMITS, _check_order, landau_bound
from .errors import BracketError, CapacityError, DomainError, ModeIndexError, NumericalError

C1 = (9.0 * math.pi**2) ** (1.0 / 3.0) / 2.0
C2 = 9.0 * (3.0 * math.pi**4) ** (1.0 / 3.0) / 40.0

SCAN_STEP = math.pi / 4
CERTIFY_STEP = math.pi / 8
DYADIC_CELL = 2.0**-20  # bisection hands over to Newton below ~1e-6
MIN_TOL = 1e-13
EXHAUSTIVE_N = 50
EXHAUSTIVE_M = 200
_CHUNK = 4096
_NEWTON_CAP = 100


class BoundaryCondition(str, enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class BracketSource(str, enum.Enum):
    AIRY_ESTIMATE = "airy_estimate"
    MCMAHON = "mcmahon"
    SIGN_SCAN = "sign_scan"


@dataclass(frozen=True)
class ModeIndex:
    """(n, m, bc) naming one cos(n theta) eigenfunction of the unit disk."""

    n: int
    m: int
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise ModeIndexError(f"n must be a nonnegative integer, got {self.n!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise ModeIndexError(f"m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "bc", BoundaryCondition(self.bc))


@dataclass(frozen=True)
class ZeroBracket:
    lower: float
    upper: float
    source: BracketSource

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("bracket needs lower < upper")


@dataclass(frozen=True)
class Eigenpair:
    mode: ModeIndex
    k: float
    eigenvalue: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "eigenvalue", self.k * self.k)


# --- target functions ---------------------------------------------------------


def _values(n, bc, xs):
    """Target f and its slope at positive ``xs`` (arrays)."""
    xs = np.ascontiguousarray(xs, dtype=float)
    bc = BoundaryCondition(bc)
    jn, jn1 = _kernels.pair_array(n, xs)
    jp = n / xs * jn - jn1
    if bc is BoundaryCondition.DIRICHLET:
        return jn, jp
    jpp = -jp / xs - (1.0 - n * n / (xs * xs)) * jn
    return jp, jpp


def target(n: int, bc, x):
    """J_n(x) for Dirichlet, J_n'(x) for Neumann."""
    arr = np.asarray(x, dtype=float)
    f, _ = _values(n, BoundaryCondition(bc), arr.reshape(-1))
    return float(f[0]) if arr.ndim == 0 else f.reshape(arr.shape)


def residual_scale(n: int) -> float:
    return landau_bound(n) if n >= 1 else 1.0


def scan_start(n: int) -> float:
    """Left end of every scan: no zero of J_n or J_n' (besides 0) lies below it."""
    return float(n) if n >= 1 else CERTIFY_STEP


# --- estimates ------------------------------------------------------------------


def zero_bounds(n: int, m: int, bc=BoundaryCondition.DIRICHLET) -> tuple[float, float]:
    """Two-sided Airy-type estimate (lower, upper) of k_{n,m} or k'_{n,m}.

    The Neumann lower estimate uses (m-1)^(2/3), its upper one m^(2/3).
    Both hold only for m large enough; see :func:`verify_zero_estimates`.
    """
    bc = BoundaryCondition(bc)
    if n < 1 or m < 1:
        raise DomainError("zero bounds need n >= 1 and m >= 1")
    cn = n ** (1.0 / 3.0)
    top = n + C1 * m ** (2.0 / 3.0) * cn
    width = C2 * m ** (4.0 / 3.0) / cn
    if bc is BoundaryCondition.DIRICHLET:
        return top, top + width
    return n + C1 * (m - 1) ** (2.0 / 3.0) * cn, top + width


def mcmahon_estimate(n: int, m: int, bc=BoundaryCondition.DIRICHLET) -> float:
    """Large-m expansion with two correction terms."""
    bc = BoundaryCondition(bc)
    mu = 4.0 * n * n
    if bc is BoundaryCondition.DIRICHLET:
        beta = (m + 0.5 * n - 0.25) * math.pi
        b8 = 8.0 * beta
        return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8**3)
    # J_0' = -J_1, whose first positive zero is the J_1 zero with index 1
    mm = m + 1 if n == 0 else m
    beta = (mm + 0.5 * n - 0.75) * math.pi
    b8 = 8.0 * beta
    return beta - (mu + 3.0) / b8 - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * b8**3)


def _sign_changes(f):
    pos = f > 0
    return np.flatnonzero(pos[1:] != pos[:-1])


def _certify(n, bc, lo, hi):
    """None if [lo, hi] holds exactly one sign change, else the reason."""
    if not (0.0 < lo < hi):
        return "empty or nonpositive interval"
    steps = max(2, int(math.ceil((hi - lo) / CERTIFY_STEP)))
    xs = np.linspace(lo, hi, steps + 1)
    f, _ = _values(n, bc, xs)
    if f[0] * f[-1] > 0:
        return "no sign change at endpoints"
    count = len(_sign_changes(f))
    if count != 1:
        return f"{count} sign changes on sub-grid"
    return None


def _scan_limit(n, m, bc):
    guess = mcmahon_estimate(n, m, bc)
    if n >= 1:
        guess = max(guess, zero_bounds(n, m, bc)[1])
    return guess + 10.0 * math.pi


def scan_brackets(n: int, bc, count: int, start: float | None = None, limit=None):
    """First ``count`` sign-change intervals of the target at or after ``start``."""
    bc = BoundaryCondition(bc)
    x0 = scan_start(n) if start is None else float(start)
    if limit is None:
        limit = _scan_limit(n, count, bc) + max(0.0, x0 - scan_start(n))
    found_lo: list[float] = []
    found_hi: list[float] = []
    i0 = 0
    prev_x = prev_f = None
    while len(found_lo) < count:
        xs = x0 + SCAN_STEP * np.arange(i0, i0 + _CHUNK, dtype=float)
        if xs[0] > limit:
            raise BracketError(
                f"sign scan passed {limit:.6g} with {len(found_lo)} of {count} zeros",
                {"n": n, "bc": bc.value, "start": x0, "limit": limit, "found": len(found_lo)},
            )
        f, _ = _values(n, bc, xs)
        if prev_x is not None:
            xs = np.concatenate(([prev_x], xs))
            f = np.concatenate(([prev_f], f))
        idx = _sign_changes(f)
        found_lo.extend(xs[idx].tolist())
        found_hi.extend(xs[idx + 1].tolist())
        prev_x, prev_f = xs[-1], f[-1]
        i0 += _CHUNK
    return np.array(found_lo[:count]), np.array(found_hi[:count])


def estimate_bracket(n, m, bc=BoundaryCondition.DIRICHLET, *, previous=None, limits=DEFAULT_LIMITS):
    """Certified bracket around the m-th zero, trying Airy, McMahon, scan."""
    n = _check_order(n, limits)
    if m < 1:
        raise DomainError("m must be >= 1")
    bc = BoundaryCondition(bc)
    attempts = {}

    if n >= 1 and C2 * m ** (4.0 / 3.0) * n ** (-1.0 / 3.0) < 0.4 * math.pi:
        lo, hi = zero_bounds(n, m, bc)
        _check_cap(hi, limits)
        reason = _certify(n, bc, lo, hi)
        if reason is None:
            # the estimates are not ordered for small m, so the bracket may
            # hold a neighbouring zero; the span below it is short here
            below = _count_below(n, bc, lo + 1e-3)
            if below == m - 1:
                return ZeroBracket(lo, hi, BracketSource.AIRY_ESTIMATE)
            reason = f"bracket holds zero number {below + 1}"
        attempts["airy_estimate"] = {"bracket": (lo, hi), "reason": reason}

    if m > 10 * max(1, n):
        est = mcmahon_estimate(n, m, bc)
        lo, hi = est - math.pi / 4, est + math.pi / 4
        _check_cap(hi, limits)
        reason = _certify(n, bc, lo, hi)
        if reason is None:
            return ZeroBracket(lo, hi, BracketSource.MCMAHON)
        attempts["mcmahon"] = {"bracket": (lo, hi), "reason": reason}

    limit = _scan_limit(n, m, bc)
    _check_cap(limit, limits)
    if previous is not None:
        start, need = max(scan_start(n), previous + 0.5 * SCAN_STEP), 1
    else:
        start, need = scan_start(n), m
    try:
        lows, highs = scan_brackets(n, bc, need, start=start, limit=limit)
    except BracketError as exc:
        attempts["sign_scan"] = exc.diagnostics
        raise BracketError(
            f"no certified bracket for n={n}, m={m}, bc={bc.value}", attempts
        ) from None
    return ZeroBracket(float(lows[-1]), float(highs[-1]), BracketSource.SIGN_SCAN)


def _check_cap(x, limits):
    if x > limits.x_cap:
        raise CapacityError(f"zero search reaches x = {x:.6g} beyond cap {limits.x_cap:.6g}")


# --- refinement -------------------------------------------------------------------


def refine(n: int, bc, lower, upper, tol: float = 1e-12):
    """Vectorised bisection then safeguarded Newton on sign-change brackets.

    Bisection stops inside the dyadic cell of width ``DYADIC_CELL`` that
    holds the root; Newton then starts from that cell alone, so the result
    does not depend on which bracket the caller supplied.
    """
    bc = BoundaryCondition(bc)
    lo = np.array(lower, dtype=float, ndmin=1)
    hi = np.array(upper, dtype=float, ndmin=1)
    flo, _ = _values(n, bc, lo)
    neg_lo = flo < 0

    while np.any(hi - lo > 0.5 * DYADIC_CELL):
        mid = 0.5 * (lo + hi)
        fm, _ = _values(n, bc, mid)
        left = (fm < 0) == neg_lo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)

    edge = np.ceil(lo / DYADIC_CELL) * DYADIC_CELL
    fe, _ = _values(n, bc, edge)
    upper_cell = (edge < hi) & ((fe < 0) == neg_lo)
    lo = np.where(upper_cell, edge, edge - DYADIC_CELL)
    hi = lo + DYADIC_CELL
    flo, _ = _values(n, bc, lo)
    neg_lo = flo < 0

    x = 0.5 * (lo + hi)
    done = np.zeros(x.shape, dtype=bool)
    last = np.full(x.shape, np.inf)
    for _ in range(_NEWTON_CAP):
        f, fp = _values(n, bc, x)
        left = (f < 0) == neg_lo
        lo = np.where(~done & left, x, lo)
        hi = np.where(~done & ~left, x, hi)
        step = f / fp
        new = x - step
        # a step that leaves the bracket or fails to halve the previous one
        # means rounding noise dominates: bisect instead
        bad = ~np.isfinite(new) | (new < lo) | (new > hi) | (np.abs(step) > 0.5 * last)
        last = np.where(bad, 0.5 * (hi - lo), np.abs(step))
        new = np.where(bad, 0.5 * (lo + hi), new)
        eff = np.maximum(tol, 4.0 * np.spacing(x))
        conv = (f == 0) | (~bad & (np.abs(step) <= eff)) | (hi - lo <= eff)
        x = np.where(done | (f == 0), x, new)
        done |= conv
        if done.all():
            return x
    raise NumericalError(f"Newton refinement did not converge for n={n}, bc={bc.value}")


def _count_below(n, bc, k):
    """Sign changes of the target on [scan_start, k - 1e-3]."""
    x0 = scan_start(n)
    end = k - 1e-3
    if end <= x0:
        return 0
    xs = np.append(np.arange(x0, end, CERTIFY_STEP), end)
    f, _ = _values(n, bc, xs)
    return len(_sign_changes(f))


def _check_residual(n, bc, k, m):
    f = target(n, bc, k)
    if not abs(f) < 1e-9 * residual_scale(n):
        raise NumericalError(f"residual {f:.3g} too large at n={n}, m={m}, k={k!r}")


def find_zero(n, m, bc=BoundaryCondition.DIRICHLET, tol=1e-12, *, cache=None,
              limits=DEFAULT_LIMITS, check_index=None) -> Eigenpair:
    """The m-th positive zero as an :class:`Eigenpair`.

    ``check_index`` defaults to counting sign changes below the zero when
    n <= 50 and m <= 200.
    """
    mode = ModeIndex(n, m, bc)
    n, m, bc = mode.n, mode.m, mode.bc
    _check_order(n, limits)
    if tol < MIN_TOL:
        raise DomainError(f"tol must be >= {MIN_TOL:g}")
    if cache is not None:
        hit = cache.get(bc, n, m)
        if hit is not None:
            return Eigenpair(mode, hit)

    br = estimate_bracket(n, m, bc, limits=limits)
    k = float(refine(n, bc, br.lower, br.upper, tol)[0])
    if check_index is None:
        check_index = n <= EXHAUSTIVE_N and m <= EXHAUSTIVE_M
    if check_index:
        below = _count_below(n, bc, k)
        if below != m - 1:
            raise BracketError(
                f"bracket from {br.source.value} holds zero number {below + 1}, not {m}",
                {"n": n, "m": m, "bc": bc.value, "k": k, "source": br.source.value},
            )
    _check_residual(n, bc, k, m)
    if cache is not None:
        k = cache.put(bc, n, m, k)
    return Eigenpair(mode, k)


def zero_table(n, m_max, bc=BoundaryCondition.DIRICHLET, tol=1e-12, *, cache=None,
               limits=DEFAULT_LIMITS) -> list[Eigenpair]:
    """The first ``m_max`` zeros, found by one scan and a vectorised refinement."""
    n = _check_order(n, limits)
    bc = BoundaryCondition(bc)
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    if tol < MIN_TOL:
        raise DomainError(f"tol must be >= {MIN_TOL:g}")
    ms = range(1, m_max + 1)
    known = cache.get_many(bc, n, ms) if cache is not None else {}
    if len(known) < m_max:
        limit = _scan_limit(n, m_max, bc)
        _check_cap(limit, limits)
        lows, highs = scan_brackets(n, bc, m_max, limit=limit)
        ks = refine(n, bc, lows, highs, tol)
        fresh = {}
        for m, k in zip(ms, ks.tolist()):
            if m not in known:
                _check_residual(n, bc, k, m)
                fresh[m] = k
        if cache is not None:
            fresh = cache.put_many(bc, n, fresh)
        known = {**known, **fresh}
    table = [Eigenpair(ModeIndex(n, m, bc), known[m]) for m in ms]
    if any(b.k <= a.k for a, b in zip(table, table[1:])):
        raise NumericalError(f"zero table for n={n} is not strictly increasing")
    return table


# --- estimate verification -------------------------------------------------------


@dataclass(frozen=True)
class EstimateRow:
    m: int
    k: float
    lower: float
    upper: float
    lower_ok: bool
    upper_ok: bool

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok


@dataclass(frozen=True)
class EstimateReport:
    n: int
    bc: BoundaryCondition
    rows: tuple
    m0: int | None  # smallest m from which every later row holds; None if the last fails

    @property
    def violations(self) -> list[int]:
        return [r.m for r in self.rows if not r.holds]


def verify_zero_estimates(n, m_range, bc=BoundaryCondition.DIRICHLET, tol=1e-12, *, cache=None,
                          limits=DEFAULT_LIMITS) -> EstimateReport:
    """Check the two-sided Airy-type estimates over ``m_range`` (iterable of m)."""
    bc = BoundaryCondition(bc)
    ms = sorted(set(int(m) for m in m_range))
    if not ms or ms[0] < 1:
        raise DomainError("m_range must contain positive integers")
    table = zero_table(n, ms[-1], bc, tol, cache=cache, limits=limits)
    rows = []
    for m in ms:
        k = table[m - 1].k
        lo, hi = zero_bounds(n, m, bc)
        rows.append(EstimateRow(m, k, lo, hi, lo < k, k < hi))
    m0 = None
    for row in reversed(rows):
        if not row.holds:
            break
        m0 = row.m
    return EstimateReport(n, bc, tuple(rows), m0)


def interlacing_violations(n: int, m_max: int, tol=1e-12, *, cache=None) -> list[int]:
    """m values where k_{n,m-1} < k'_{n,m} < k_{n,m} fails (k_{n,0} = 0).

    For n = 0 the excluded zero of J_0' at the origin shifts the Neumann
    index by one, and the checked relation becomes k_{0,m} < k'_{0,m} < k_{0,m+1}.
    """
    shift = 1 if n == 0 else 0
    dir_ks = [0.0] + [e.k for e in zero_table(n, m_max + shift, "dirichlet", tol, cache=cache)]
    neu_ks = [e.k for e in zero_table(n, m_max, "neumann", tol, cache=cache)]
    return [
        m for m in range(1, m_max + 1)
        if not dir_ks[m - 1 + shift] < neu_ks[m - 1] < dir_ks[m + shift]
    ]
