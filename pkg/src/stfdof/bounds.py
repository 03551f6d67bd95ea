"""Closed-form dimensionality counts and truncation-error bounds.

Notation used below: ``a = e*pi*R/c`` converts frequency to the spatial
mode index at the edge of the ball, ``b = e*pi*T`` converts bandwidth to
time-frequency modes.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DivergenceError, DomainError

E_PI = math.e * math.pi
DEFAULT_C = 3.0e8
C_ENV_VAR = "STFDOF_SPEED_OF_LIGHT"


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = DEFAULT_C

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"speed of light must be positive, got {self.c}")

    @classmethod
    def from_env(cls) -> "PhysicalConstants":
        raw = os.environ.get(C_ENV_VAR)
        return cls(float(raw)) if raw else cls()


@dataclass(frozen=True)
class SignalExtent:
    """Ball radius R (m), observation time T (s), centre frequency F (Hz)
    and half-bandwidth W (Hz); the band is [F - W, F + W]."""

    radius_R: float
    time_T: float
    center_F: float
    half_band_W: float

    def __post_init__(self):
        for name in ("radius_R", "time_T", "center_F", "half_band_W"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"{name} must be finite and non-negative, got {v}")
        if self.center_F < self.half_band_W:
            raise DomainError(
                f"center_F ({self.center_F}) must be >= half_band_W ({self.half_band_W})"
            )


@dataclass(frozen=True)
class TruncationOrder:
    P: int
    N: int

    def __post_init__(self):
        if self.P < 0 or self.N < 0:
            raise DomainError(f"truncation orders must be >= 0, got P={self.P}, N={self.N}")

    def shifted(self, delta: int, alpha: int) -> "TruncationOrder":
        return TruncationOrder(self.P + delta, self.N + alpha)


@dataclass(frozen=True)
class DofBreakdown:
    N0: float
    N1: float
    D1: float
    D2: float
    total: float

    def as_dict(self) -> dict:
        return asdict(self)


class CountingMode(str, enum.Enum):
    continuous = "continuous"
    integer = "integer"


class AsymptoticCase(str, enum.Enum):
    R_to_0 = "R_to_0"
    TW_to_0 = "TW_to_0"
    T_to_0_W_fixed = "T_to_0_W_fixed"
    full_band = "full_band"
    general = "general"


def dof_time(W: float, T: float) -> float:
    """Classical time-bandwidth count 2WT + 1."""
    return 2.0 * W * T + 1.0


def dof_space(R: float, F: float, c: float = DEFAULT_C,
              mode: CountingMode = CountingMode.integer) -> float:
    """Narrowband spatial count (e*pi*R*F/c + 1)^2, ceiling applied in
    integer mode."""
    n = E_PI * R * F / c
    if CountingMode(mode) is CountingMode.integer:
        n = math.ceil(n)
    return (n + 1.0) ** 2


def truncation_point(r_norm: float, t: float, f: float, delta_f: float,
                     c: float = DEFAULT_C) -> TruncationOrder:
    """Threshold orders past which the modal coefficients decay: P for the
    time-frequency series, N for the spatial series. The combined
    threshold is ``P + N``."""
    if min(r_norm, t, f, delta_f) < 0:
        raise DomainError("truncation_point arguments must be non-negative")
    P = math.ceil(E_PI * delta_f * t)
    N = math.ceil(E_PI * f * r_norm / c)
    return TruncationOrder(P, N)


def _log_ratio_power(arg: float, order: int) -> float:
    # log((arg / (order + 1))^order) with 0^0 = 1
    if order == 0:
        return 0.0
    if arg == 0.0:
        return -math.inf
    return order * (math.log(arg) - math.log(order + 1))


def truncation_error_bound(order: TruncationOrder, f_acute: float, t: float,
                           f: float, r_norm: float, c: float = DEFAULT_C) -> float:
    """Product bound 2e (e pi f' t/(P+1))^P (e pi f |r|/c/(N+1))^N.

    Raises DivergenceError unless P + 1 > e pi f' t and N + 1 > e pi f |r| / c.
    """
    time_arg = E_PI * f_acute * t
    space_arg = E_PI * f * r_norm / c
    if not order.P + 1 > time_arg:
        raise DivergenceError(
            f"time series bound diverges: P+1={order.P + 1} <= e*pi*f'*t={time_arg:.6g}")
    if not order.N + 1 > space_arg:
        raise DivergenceError(
            f"spatial series bound diverges: N+1={order.N + 1} <= e*pi*f*|r|/c={space_arg:.6g}")
    log_b = (math.log(2.0 * math.e) + _log_ratio_power(time_arg, order.P)
             + _log_ratio_power(space_arg, order.N))
    return math.exp(log_b)


def error_decay_factor(delta: int, alpha: int) -> float:
    """Relative shrinkage e^(2 - delta - alpha) of the error bound when the
    orders are raised by delta (time) and alpha (space)."""
    if delta < 1 or alpha < 1:
        raise DomainError(f"delta and alpha must be >= 1, got {delta}, {alpha}")
    return math.exp(2 - delta - alpha)


def _tail_sum_bound(arg: float, order: int) -> float:
    # sum_{n>order} (2n+1)|j_n(x)| with x = 2*arg/e, via the Bessel magnitude
    # bound, (2n+1)/Gamma(n+3/2) = 2/Gamma(n+1/2) and the Gamma lower bound:
    # each term <= sqrt(e/2) (2 arg/(2n+1))^n
    if arg == 0.0:
        return 0.0
    q = 2.0 * arg / (2 * order + 3)
    if q >= 1.0:
        raise DivergenceError(f"tail bound needs 2*arg < 2*order+3, got arg={arg}, order={order}")
    return math.sqrt(math.e / 2.0) * q ** (order + 1) / (1.0 - q)


def separable_error_bound(order: TruncationOrder, f_acute: float, t: float,
                          f: float, r_norm: float, c: float = DEFAULT_C) -> float:
    """Rigorous bound on |exact - truncated| for the product series.

    Uses |AB - A_P B_N| <= |A - A_P| + (1 + |A - A_P|) |B - B_N| with |A| = |B| = 1
    and geometric tail sums of the per-term magnitude bounds.
    """
    time_tail = _tail_sum_bound(E_PI * f_acute * t, order.P)
    space_tail = _tail_sum_bound(E_PI * f * r_norm / c, order.N)
    return time_tail + (1.0 + time_tail) * space_tail


def _edge_indices(extent: SignalExtent, consts: PhysicalConstants) -> tuple[float, float]:
    a = E_PI * extent.radius_R / consts.c
    return a * (extent.center_F - extent.half_band_W), a * (extent.center_F + extent.half_band_W)


def dof_3d_closed_form(extent: SignalExtent,
                       consts: PhysicalConstants = PhysicalConstants()) -> DofBreakdown:
    """Space-time-frequency degrees of freedom in closed form, with the
    full-band block D1 separated from the partial-band remainder D2."""
    R, T, F, W = extent.radius_R, extent.time_T, extent.center_F, extent.half_band_W
    a = E_PI * R / consts.c
    bw = E_PI * 2.0 * W * T
    N0, N1 = _edge_indices(extent, consts)
    D1 = (bw + 1.0) * (N0 + 1.0) ** 2
    total = (D1
             + bw * a * a * (2.0 * F * W - (2.0 / 3.0) * W * W)
             + a * a * 4.0 * F * W
             + bw * (a * F + 1.0 / 6.0))
    return DofBreakdown(N0=N0, N1=N1, D1=D1, D2=total - D1, total=total)


def modes_per_collection(n: np.ndarray, extent: SignalExtent,
                         consts: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Time-frequency modes carried by spatial order n.

    Order n switches on at frequency c n / (e pi R); the usable band is the
    part of [F - W, F + W] above that frequency.
    """
    R, T, F, W = extent.radius_R, extent.time_T, extent.center_F, extent.half_band_W
    n = np.asarray(n, dtype=float)
    if R == 0.0:
        onset = np.where(n == 0, 0.0, np.inf)
    else:
        onset = consts.c * n / (E_PI * R)
    band = np.clip(F + W - onset, 0.0, 2.0 * W)
    return E_PI * band * T + 1.0


def dof_3d_discrete_sum(extent: SignalExtent,
                        consts: PhysicalConstants = PhysicalConstants()) -> float:
    """Exact integer-index mode count sum_{n=0}^{floor(N1)} N_TW(n) (2n + 1)."""
    _, N1 = _edge_indices(extent, consts)
    n = np.arange(math.floor(N1) + 1)
    return float(np.sum(modes_per_collection(n, extent, consts) * (2 * n + 1)))


def dof_asymptotic(extent: SignalExtent, consts: PhysicalConstants = PhysicalConstants(),
                   case: AsymptoticCase | str = AsymptoticCase.general) -> float:
    """Limiting forms of the closed-form count."""
    case = AsymptoticCase(case)
    R, T, F, W = extent.radius_R, extent.time_T, extent.center_F, extent.half_band_W
    a = E_PI * R / consts.c
    if case is AsymptoticCase.R_to_0:
        return 7.0 * E_PI * T * W / 3.0 + 1.0
    if case is AsymptoticCase.TW_to_0:
        return (a * F + 1.0) ** 2
    if case is AsymptoticCase.T_to_0_W_fixed:
        return (a * (F + W) + 1.0) ** 2
    if case is AsymptoticCase.full_band:
        if not math.isclose(F, W, rel_tol=1e-12):
            raise DomainError(f"full_band case needs F == W, got F={F}, W={W}")
        return 2.0 * E_PI * T * W * a * a * (4.0 / 3.0) * W * W
    return 2.0 * E_PI * T * W * a * a * (F * F + W * W / 3.0)
