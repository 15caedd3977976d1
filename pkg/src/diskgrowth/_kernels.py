"""Compiled scalar kernels for integer- and fractional-order J.

Regimes for integer order ``n`` (all double precision):

* ``x <= 2*sqrt(n+1)``: ascending series, where term magnitudes never grow;
* ``x >= max(25, n**2/2)``: Hankel asymptotic expansion summed to its
  smallest term;
* ``x < max(25, n)``: Miller backward recurrence normalised with
  ``J_0 + 2*sum J_2k = 1``;
* otherwise: forward recurrence seeded by Hankel ``J_0`` and ``J_1``,
  which is stable while the order stays below the argument.
"""

import math

import numpy as np
from numba import njit

_HANKEL_MIN = 25.0
_RESCALE = 1e250
_SQRT_HALF = 0.7071067811865476

# cos/sin of q*pi/4 for q = 0..7, exact to double precision
_COS_QUARTER = np.array(
    [1.0, _SQRT_HALF, 0.0, -_SQRT_HALF, -1.0, -_SQRT_HALF, 0.0, _SQRT_HALF]
)
_SIN_QUARTER = np.array(
    [0.0, _SQRT_HALF, 1.0, _SQRT_HALF, 0.0, -_SQRT_HALF, -1.0, -_SQRT_HALF]
)


@njit(cache=True)
def series(nu, x):
    """Ascending series for real order ``nu > -1``."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    h = 0.5 * x
    log_lead = nu * math.log(h) - math.lgamma(nu + 1.0)
    if log_lead < -745.0:
        return 0.0
    term = math.exp(log_lead)
    total = term
    q = -h * h
    k = 1
    while k < 1000:
        term *= q / (k * (k + nu))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        k += 1
    return total


@njit(cache=True)
def hankel_pq(nu, x):
    """Hankel P and Q sums, truncated at the smallest term."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    prev = 1e300
    k = 1
    while k < 20000:
        odd = 2.0 * k - 1.0
        term *= (mu - odd * odd) / (8.0 * k * x)
        size = abs(term)
        if size > prev and k > nu:
            break
        r = k % 4
        if r == 1:
            q += term
        elif r == 2:
            p -= term
        elif r == 3:
            q -= term
        else:
            p += term
        if size <= 1e-17 * (abs(p) + abs(q)):
            break
        prev = size
        k += 1
    return p, q


@njit(cache=True)
def hankel_int(n, x):
    """Hankel expansion for integer order with an exactly reduced phase.

    The phase ``x - (2n+1)pi/4`` is never formed; cos/sin of ``x`` are
    combined with exact values of multiples of pi/4 instead, which keeps
    the absolute phase error at the rounding level of ``cos(x)``.
    """
    p, q = hankel_pq(float(n), x)
    quarter = (2 * n + 1) % 8
    cp = _COS_QUARTER[quarter]
    sp = _SIN_QUARTER[quarter]
    cx = math.cos(x)
    sx = math.sin(x)
    cos_chi = cx * cp + sx * sp
    sin_chi = sx * cp - cx * sp
    return math.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


@njit(cache=True)
def hankel_real(nu, x):
    """Hankel expansion for real order (used for the Airy identity)."""
    p, q = hankel_pq(nu, x)
    chi = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


@njit(cache=True)
def miller_pair(n, x):
    """(J_n(x), J_{n+1}(x)) by backward recurrence; requires x > 0."""
    big = max(float(n), x)
    top = int(big + 20.0 + math.sqrt(60.0 * big))
    if top % 2 == 1:
        top += 1
    if top < n + 4:
        top = n + 4 + (n % 2)
    two_over_x = 2.0 / x
    upper = 0.0
    cur = 1e-30
    total = 2.0 * cur
    out_n = 0.0
    out_n1 = 0.0
    k = top
    while k > 0:
        low = k * two_over_x * cur - upper
        upper = cur
        cur = low
        order = k - 1
        if order == n + 1:
            out_n1 = cur
        elif order == n:
            out_n = cur
        if order == 0:
            total += cur
        elif order % 2 == 0:
            total += 2.0 * cur
        if abs(cur) > _RESCALE:
            cur /= _RESCALE
            upper /= _RESCALE
            total /= _RESCALE
            out_n /= _RESCALE
            out_n1 /= _RESCALE
        k -= 1
    return out_n / total, out_n1 / total


@njit(cache=True)
def forward_pair(n, x):
    """(J_n(x), J_{n+1}(x)) by forward recurrence; requires x >= 25, n <= x."""
    lower = hankel_int(0, x)
    cur = hankel_int(1, x)
    two_over_x = 2.0 / x
    for k in range(1, n + 1):
        nxt = k * two_over_x * cur - lower
        lower = cur
        cur = nxt
    return lower, cur


@njit(cache=True)
def pair(n, x):
    """(J_n(x), J_{n+1}(x)) for integer n >= 0 and x >= 0."""
    if x == 0.0:
        return (1.0 if n == 0 else 0.0), 0.0
    if x <= 2.0 * math.sqrt(n + 1.0):
        return series(float(n), x), series(float(n + 1), x)
    if x >= max(_HANKEL_MIN, 0.5 * n * n):
        return hankel_int(n, x), hankel_int(n + 1, x)
    if x < _HANKEL_MIN or x < n:
        return miller_pair(n, x)
    return forward_pair(n, x)


@njit(cache=True)
def jn_array(n, xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = pair(n, xs[i])[0]
    return out


@njit(cache=True)
def pair_array(n, xs):
    """J_n and J_{n+1} on an array of arguments."""
    jn = np.empty(xs.shape[0])
    jn1 = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        a, b = pair(n, xs[i])
        jn[i] = a
        jn1[i] = b
    return jn, jn1


@njit(cache=True)
def series_array(nu, xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = series(nu, xs[i])
    return out


@njit(cache=True)
def real_order(nu, x):
    """J_nu(x) for real nu > -1: series below 12, Hankel above."""
    if x < 12.0:
        return series(nu, x)
    return hankel_real(nu, x)
