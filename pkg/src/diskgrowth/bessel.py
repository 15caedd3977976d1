"""Bessel functions of the first kind and the classical asymptotics around them.

``bessel_j`` dispatches between a self-contained reference evaluator (see
``_kernels``) and the leading-order asymptotic formulas, which exist to be
checked against the reference rather than to replace it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import CapacityError, DomainError

LANDAU_B = 0.674885
CAUCHY_CONSTANT = math.gamma(1.0 / 3.0) / (2.0 ** (1.0 / 3.0) * 3.0 ** (1.0 / 6.0) * math.pi)


@dataclass(frozen=True)
class Limits:
    """Order and argument caps; beyond them evaluation refuses to run."""

    n_cap: int = 10_000
    x_cap: float = 1e9


DEFAULT_LIMITS = Limits()


class EvalRegime(str, enum.Enum):
    REFERENCE = "reference"
    POWER_SERIES = "power_series"
    MEISSEL_ONE = "meissel_one"
    MEISSEL_TWO = "meissel_two"
    JACOBI_LARGE = "jacobi_large"
    AUTO = "auto"


@dataclass(frozen=True)
class MeisselTerms:
    """Correction exponent (z < 1) or sec-angle (z > 1) of a Meissel form."""

    v_n: float | None
    beta: float | None


class Asymptotic(NamedTuple):
    value: float
    error_term: float


def _check_order(n, limits=DEFAULT_LIMITS):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n > limits.n_cap:
        raise CapacityError(f"order {n} exceeds cap {limits.n_cap}")
    return n


def _check_args(x, limits=DEFAULT_LIMITS):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("argument must be >= 0")
    if arr.size and float(np.max(arr)) > limits.x_cap:
        raise CapacityError(f"argument {float(np.max(arr)):.6g} exceeds cap {limits.x_cap:.6g}")
    return arr


def _unwrap(arr, out):
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def jacobi_threshold(n: int) -> float:
    """Smallest argument at which the Jacobi form is accepted: 50*max(1, n^2)."""
    return 50.0 * max(1, n * n)


def bessel_j(n, x, regime=EvalRegime.AUTO, *, limits=DEFAULT_LIMITS):
    """J_n(x) for integer ``n >= 0`` and real ``x >= 0`` (scalar or array).

    ``AUTO`` and ``REFERENCE`` share the reference evaluator; its
    large-argument branch is the Jacobi form carried to all correction
    terms. The other regimes evaluate the named formula and raise
    :class:`DomainError` outside its validity range.
    """
    regime = EvalRegime(regime)
    n = _check_order(n, limits)
    arr = _check_args(x, limits)
    flat = np.ascontiguousarray(arr.reshape(-1))

    if regime in (EvalRegime.AUTO, EvalRegime.REFERENCE):
        out = _kernels.jn_array(n, flat)
    elif regime is EvalRegime.POWER_SERIES:
        out = _kernels.series_array(float(n), flat)
    elif regime is EvalRegime.MEISSEL_ONE:
        if n < 1:
            raise DomainError("Meissel regimes need n >= 1")
        out = np.array([meissel_one(n, xi / n) for xi in flat])
    elif regime is EvalRegime.MEISSEL_TWO:
        if n < 1:
            raise DomainError("Meissel regimes need n >= 1")
        out = np.array([meissel_two(n, xi / n) for xi in flat])
    else:
        out = np.array([jacobi_asym(n, xi).value for xi in flat])
    return _unwrap(arr, out)


def bessel_pair(n, x, *, limits=DEFAULT_LIMITS):
    """Reference (J_n(x), J_{n+1}(x)) as float arrays (or floats)."""
    n = _check_order(n, limits)
    arr = _check_args(x, limits)
    jn, jn1 = _kernels.pair_array(n, np.ascontiguousarray(arr.reshape(-1)))
    return _unwrap(arr, jn), _unwrap(arr, jn1)


def bessel_j_prime(n, x, *, limits=DEFAULT_LIMITS):
    """J_n'(x) = (n/x) J_n(x) - J_{n+1}(x), i.e. -J_1 for n = 0."""
    arr = _check_args(x, limits)
    if np.any(arr <= 0):
        raise DomainError("derivative needs x > 0")
    jn, jn1 = bessel_pair(n, arr, limits=limits)
    out = n / arr * jn - jn1
    return float(out) if arr.ndim == 0 else out


def bessel_j_second(n, x, jn=None, jnp=None, *, limits=DEFAULT_LIMITS):
    """J_n''(x) from Bessel's equation; pass J_n, J_n' to skip re-evaluation."""
    x = np.asarray(x, dtype=float)
    if jn is None or jnp is None:
        jn, jn1 = bessel_pair(n, x, limits=limits)
        jnp = n / x * jn - jn1
    return -jnp / x - (1.0 - n * n / (x * x)) * jn


def bessel_j_real(nu: float, x: float) -> float:
    """J_nu(x) for the non-integer orders +-1/3 used by the Airy identity."""
    if nu <= -1.0:
        raise DomainError("order must exceed -1")
    if x < 0:
        raise DomainError("argument must be >= 0")
    return float(_kernels.real_order(float(nu), float(x)))


# --- Meissel developments -------------------------------------------------


def meissel_exponent(z: float) -> float:
    """Stirling-simplified Meissel exponent f(z) = log z + s - log(1 + s), s = sqrt(1 - z^2)."""
    if not 0.0 < z < 1.0:
        raise DomainError(f"z must lie in (0, 1), got {z}")
    s = math.sqrt(1.0 - z * z)
    return math.log(z) + s - math.log1p(s)


def meissel_terms(n: int, z: float) -> MeisselTerms:
    if n < 1:
        raise DomainError("Meissel terms need n >= 1")
    if 0.0 < z < 1.0:
        w = 1.0 - z * z
        v_n = ((2.0 + 3.0 * z * z) / w**1.5 - 2.0) / (24.0 * n)
        return MeisselTerms(v_n=v_n, beta=None)
    if z > 1.0:
        return MeisselTerms(v_n=None, beta=math.acos(1.0 / z))
    raise DomainError(f"z = {z} is at or below zero, or at the turning point")


def meissel_one(n: int, z: float) -> float:
    """Exponentially small regime: J_n(nz) for 0 < z < 1, including V_n.

    Evaluated in log space, so deep-evanescent values underflow to 0
    instead of overflowing the intermediate powers.
    """
    if not 0.0 < z < 1.0:
        raise DomainError(f"Meissel I needs 0 < z < 1, got {z}")
    if n < 1:
        raise DomainError("Meissel I needs n >= 1")
    s = math.sqrt(1.0 - z * z)
    v_n = meissel_terms(n, z).v_n
    log_j = (
        n * math.log(n * z)
        + n * s
        - v_n
        - n
        - math.lgamma(n + 1.0)
        - 0.25 * math.log1p(-z * z)
        - n * math.log1p(s)
    )
    return math.exp(log_j)


def meissel_two(n: int, z: float) -> float:
    """Oscillatory regime: J_n(n sec(beta)) for z = sec(beta) > 1."""
    if not z > 1.0:
        raise DomainError(f"Meissel II needs z > 1, got {z}")
    if n < 1:
        raise DomainError("Meissel II needs n >= 1")
    beta = meissel_terms(n, z).beta
    tb = math.tan(beta)
    return math.sqrt(2.0) * math.cos(n * (tb - beta) - math.pi / 4) / math.sqrt(math.pi * n * tb)


def meissel_two_amplitude(n: int, z: float) -> float:
    tb = math.tan(math.acos(1.0 / z))
    return math.sqrt(2.0) / math.sqrt(math.pi * n * tb)


# --- large argument and diagonal --------------------------------------------


def jacobi_asym(n: int, x: float) -> Asymptotic:
    """Leading Jacobi form and the size of its O((4n^2-1)/x) remainder."""
    if x <= jacobi_threshold(n):
        raise DomainError(
            f"Jacobi form needs x > {jacobi_threshold(n):g} for n = {n}, got {x:g}"
        )
    amp = math.sqrt(2.0 / (math.pi * x))
    value = amp * math.cos(x - n * math.pi / 2 - math.pi / 4)
    return Asymptotic(value, amp * abs(4.0 * n * n - 1.0) / x)


def cauchy_diag(n: int) -> float:
    """Leading-order J_n(n) with the constant Gamma(1/3) / (2^(1/3) 3^(1/6) pi)."""
    if n < 1:
        raise DomainError("cauchy_diag needs n >= 1")
    return CAUCHY_CONSTANT * n ** (-1.0 / 3.0)


def landau_bound(n: int) -> float:
    """Uniform bound b n^(-1/3) on |J_n(x)|."""
    if n < 1:
        raise DomainError("landau_bound needs n >= 1")
    return LANDAU_B * n ** (-1.0 / 3.0)


def krasikov_threshold(n: int) -> float:
    mu = (2.0 * n + 1.0) * (2.0 * n + 3.0)
    return math.sqrt(mu + mu ** (2.0 / 3.0)) / 2.0


def krasikov_bound(n: int, x):
    """Upper bound for J_n(x)^2 valid for n >= 1 and x above the threshold."""
    if n < 1:
        raise DomainError("krasikov_bound needs n >= 1")
    threshold = krasikov_threshold(n)
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= threshold):
        raise DomainError(
            f"Krasikov bound needs x > {threshold!r} for n = {n}",
        )
    mu = (2.0 * n + 1.0) * (2.0 * n + 3.0)
    four_x2 = 4.0 * arr * arr
    out = 4.0 * (four_x2 - (2.0 * n + 1.0) * (2.0 * n + 5.0)) / (
        math.pi * ((four_x2 - mu) ** 1.5 - mu)
    )
    return float(out) if arr.ndim == 0 else out


# --- Airy zeros ------------------------------------------------------------


def airy_zero_estimate(m: int) -> float:
    """Leading-order magnitude (3 pi m / 2)^(2/3) of the m-th negative Airy zero."""
    if m < 1:
        raise DomainError("m must be >= 1")
    return (1.5 * math.pi * m) ** (2.0 / 3.0)


def airy_ai_negative(x: float) -> float:
    """Ai(-x) for x > 0 through J_(1/3) and J_(-1/3) of (2/3) x^(3/2)."""
    if x <= 0:
        raise DomainError("x must be positive")
    zeta = 2.0 / 3.0 * x**1.5
    return math.sqrt(x) / 3.0 * (bessel_j_real(1.0 / 3.0, zeta) + bessel_j_real(-1.0 / 3.0, zeta))
