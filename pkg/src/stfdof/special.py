"""Spherical Bessel functions, Legendre polynomials and the Gamma-based
magnitude bounds used by the truncation analysis.

All routines work on real, non-negative arguments. ``j_n`` is evaluated
with whichever recurrence is stable for the (n, x) pair:

* ``x`` small relative to ``n`` -- ascending power series;
* ``n < x`` -- upward recurrence from the closed forms of j_0, j_1;
* ``n >= x`` -- Miller's downward recurrence, normalised against
  whichever of j_0, j_1 is larger in magnitude.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, RangeError

MAX_ORDER = 10_000

_HALF_LOG_PI = 0.5 * math.log(math.pi)
_LOG_HALF_SQRT_PI = math.log(math.sqrt(math.pi) / 2.0)
_RESCALE = 1e250


def _check_order_arg(n: int, x: float) -> None:
    if n < 0 or n > MAX_ORDER or int(n) != n:
        raise RangeError(f"order n={n} outside supported range [0, {MAX_ORDER}]")
    if not math.isfinite(x) or x < 0.0:
        raise RangeError(f"argument x={x} must be finite and non-negative")


def _log_double_factorial_odd(n: int) -> float:
    # log((2n+1)!!) = log(2^(n+1) Gamma(n+3/2) / sqrt(pi))
    return (n + 1) * math.log(2.0) + math.lgamma(n + 1.5) - _HALF_LOG_PI


def _use_series(n: int, x: float) -> bool:
    # series terms shrink by at least 1/2 per step when x^2 < 2n + 3
    return x < 1.0 or x * x < 2 * n + 3


def _series(n: int, x: float) -> float:
    lead = n * math.log(x) - _log_double_factorial_odd(n) if n else 0.0
    if lead < -745.0:
        return 0.0
    h = -0.5 * x * x
    term = 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term *= h / (m * (2 * n + 2 * m + 1))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return math.exp(lead) * total


def _j0(x: float) -> float:
    return math.sin(x) / x


def _j1(x: float) -> float:
    return (math.sin(x) / x - math.cos(x)) / x


def _upward(n: int, x: float) -> float:
    prev, cur = _j0(x), _j1(x)
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, (2 * k + 1) / x * cur - prev
    return cur


def _miller_start(n: int, x: float) -> int:
    return n + 20 + int(math.sqrt(40.0 * (n + x)))


def _miller(nmax: int, x: float, nmin: int = 0) -> np.ndarray:
    """Downward recurrence; returns normalised j_k for k in [nmin, nmax]."""
    start = _miller_start(nmax, x)
    out = np.zeros(nmax - nmin + 1)
    upper, cur = 0.0, 1e-300
    raw0 = raw1 = 0.0
    for k in range(start, 0, -1):
        lower = (2 * k + 1) / x * cur - upper
        upper, cur = cur, lower
        # cur now holds the unnormalised j_{k-1}, upper holds j_k
        if nmin <= k <= nmax:
            out[k - nmin] = upper
        if abs(cur) > _RESCALE:
            cur /= _RESCALE
            upper /= _RESCALE
            out /= _RESCALE
        if k == 1:
            raw1, raw0 = upper, cur
    if nmin == 0:
        out[0] = raw0
    j0, j1 = _j0(x), _j1(x)
    scale = j0 / raw0 if abs(j0) >= abs(j1) else j1 / raw1
    return out * scale


def spherical_bessel_j(n: int, x: float) -> float:
    """Spherical Bessel function of the first kind, j_n(x), for x >= 0."""
    _check_order_arg(n, x)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if n == 0:
        return _j0(x)
    if _use_series(n, x):
        return _series(n, x)
    if n == 1:
        return _j1(x)
    if n < x:
        return _upward(n, x)
    return float(_miller(n, x, nmin=n)[0])


def spherical_bessel_sequence(nmax: int, x: float) -> np.ndarray:
    """Return ``[j_0(x), ..., j_nmax(x)]`` using the same regime split as
    :func:`spherical_bessel_j`, sharing one recurrence pass per regime."""
    _check_order_arg(nmax, x)
    out = np.zeros(nmax + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    miller_from = None
    prev = cur = 0.0
    for n in range(nmax + 1):
        if n == 0:
            out[0] = _j0(x)
        elif _use_series(n, x):
            out[n] = _series(n, x)
        elif n < x:
            if n == 1:
                prev, cur = _j0(x), _j1(x)
            else:
                prev, cur = cur, (2 * n - 1) / x * cur - prev
            out[n] = cur
        else:
            miller_from = n
            break
    if miller_from is not None:
        # x^2 < 2n+3 becomes true again for large enough n
        tail = _miller(nmax, x, nmin=miller_from)
        for n in range(miller_from, nmax + 1):
            out[n] = _series(n, x) if _use_series(n, x) else tail[n - miller_from]
    return out


def spherical_bessel_bound(n: int, x: float) -> float:
    """Upper bound (sqrt(pi)/2) (x/2)^n / Gamma(n + 3/2) on |j_n(x)|."""
    if n == 0:
        return math.exp(_LOG_HALF_SQRT_PI - math.lgamma(1.5))
    if x == 0.0:
        return 0.0
    return math.exp(_LOG_HALF_SQRT_PI + n * math.log(x / 2.0) - math.lgamma(n + 1.5))


def gamma_lower_bound(n: int) -> float:
    """Stirling-type lower bound e^(-n-1/2) (n+1/2)^n sqrt(2 pi) < Gamma(n+1/2)."""
    h = n + 0.5
    return math.exp(-h + n * math.log(h) + 0.5 * math.log(2.0 * math.pi))


def legendre_p(n: int, u: float) -> float:
    """Legendre polynomial P_n(u) by the three-term recurrence."""
    if abs(u) > 1.0:
        raise DomainError(f"legendre_p needs |u| <= 1, got {u}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, u
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * u * cur - k * prev) / (k + 1)
    return cur


def legendre_sequence(nmax: int, u: float) -> np.ndarray:
    """Return ``[P_0(u), ..., P_nmax(u)]``."""
    if abs(u) > 1.0:
        raise DomainError(f"legendre_sequence needs |u| <= 1, got {u}")
    out = np.empty(nmax + 1)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = u
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1) * u * out[k] - k * out[k - 1]) / (k + 1)
    return out


def harmonic_addition_kernel(n: int, cos_gamma: float) -> float:
    """m-summed product of spherical harmonics, sum_m Y_n^m(a) conj(Y_n^m(b)),
    evaluated through the addition theorem as (2n+1)/(4 pi) P_n(cos_gamma)."""
    return (2 * n + 1) / (4.0 * math.pi) * legendre_p(n, cos_gamma)
