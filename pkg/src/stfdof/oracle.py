"""Exact plane waves against their truncated modal expansion.

The expansion convention was fixed numerically: partial sums converge to
the exact ``exp(-j k c t - j k.r)`` with coefficients ``(-j)^n``, i.e.

    exp(-j z cos g) = sum_n (-j)^n (2n + 1) j_n(z) P_n(cos g)

for both the time factor (cos g = 1) and the spatial factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import (DEFAULT_C, TruncationOrder, separable_error_bound,
                     truncation_error_bound, truncation_point)
from .errors import DivergenceError, DomainError
from .special import legendre_sequence, spherical_bessel_sequence

BASE_BOUND = 2.0 / math.e


@dataclass(frozen=True)
class PlaneWaveSpec:
    """Scalar wavenumber ``k_mag = k_min + k_acute`` travelling along the
    unit vector ``direction``; ``k_min`` is the lower band-edge wavenumber."""

    k_mag: float
    direction: tuple[float, float, float]
    k_min: float
    k_acute: float

    def __post_init__(self):
        norm = math.sqrt(sum(d * d for d in self.direction))
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"direction must be a unit vector, |d|={norm}")
        if self.k_acute < 0 or self.k_min < 0:
            raise DomainError("k_min and k_acute must be non-negative")
        if not math.isclose(self.k_mag, self.k_min + self.k_acute, rel_tol=1e-12, abs_tol=1e-300):
            raise DomainError("k_mag must equal k_min + k_acute")

    @classmethod
    def in_band(cls, k_acute: float, direction, F: float, W: float,
                c: float = DEFAULT_C) -> "PlaneWaveSpec":
        """Wave in [F - W, F + W] sitting ``k_acute`` above the lower edge."""
        k_min = 2.0 * math.pi * (F - W) / c
        if k_acute > 4.0 * math.pi * W / c * (1 + 1e-12):
            raise DomainError(f"k_acute={k_acute} exceeds band width 4 pi W / c")
        d = np.asarray(direction, dtype=float)
        d = d / np.linalg.norm(d)
        return cls(k_min + k_acute, tuple(float(v) for v in d), k_min, k_acute)

    def frequency_at(self, c: float) -> float:
        return self.k_mag * c / (2.0 * math.pi)

    def offset_frequency(self, c: float = DEFAULT_C) -> float:
        """f' = c k' / (2 pi), the offset above the lower band edge."""
        return self.k_acute * c / (2.0 * math.pi)

    def as_dict(self) -> dict:
        return {"k_mag": self.k_mag, "direction": list(self.direction),
                "k_min": self.k_min, "k_acute": self.k_acute}


@dataclass(frozen=True)
class SpacetimePoint:
    position: tuple[float, float, float]
    time: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (*self.position, self.time)):
            raise DomainError("spacetime point must be finite")

    @property
    def r_norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.position))

    def as_dict(self) -> dict:
        return {"position": list(self.position), "time": self.time}


@dataclass(frozen=True)
class ErrorReport:
    empirical: float
    analytic_bound: float | None
    order: TruncationOrder
    bound_diverges: bool = False
    separable_bound: float | None = field(default=None, compare=False)

    @property
    def within_bound(self) -> bool | None:
        if self.analytic_bound is None:
            return None
        return self.empirical <= self.analytic_bound


def _geometry(wave: PlaneWaveSpec, pt: SpacetimePoint, c: float):
    r = pt.r_norm
    spatial_arg = wave.k_mag * r
    time_arg = c * wave.k_acute * pt.time
    if r == 0.0:
        cos_gamma = 1.0
    else:
        cos_gamma = float(np.dot(wave.direction, pt.position)) / r
        cos_gamma = min(1.0, max(-1.0, cos_gamma))
    return spatial_arg, time_arg, cos_gamma


def _carrier(wave: PlaneWaveSpec, pt: SpacetimePoint, c: float) -> complex:
    return complex(np.exp(-1j * wave.k_min * c * pt.time))


def plane_wave_exact(wave: PlaneWaveSpec, pt: SpacetimePoint, c: float = DEFAULT_C) -> complex:
    """exp(-j |k| c t - j k.r), with the band-edge carrier factored out so
    the large k_min c t phase is reduced once."""
    k_dot_r = wave.k_mag * float(np.dot(wave.direction, pt.position))
    return _carrier(wave, pt, c) * complex(np.exp(-1j * (wave.k_acute * c * pt.time + k_dot_r)))


_MINUS_J_POWERS = np.array([1.0, -1j, -1.0, 1j])


def _phase_weights(order: int) -> np.ndarray:
    return _MINUS_J_POWERS[np.arange(order + 1) % 4]


def time_partial_sum(time_arg: float, P: int) -> complex:
    """sum_{p<=P} (-j)^p (2p+1) j_p(c k' t), converging to exp(-j c k' t)."""
    p = np.arange(P + 1)
    return complex(np.sum(_phase_weights(P) * (2 * p + 1) * spherical_bessel_sequence(P, time_arg)))


def spatial_partial_sum(spatial_arg: float, cos_gamma: float, N: int) -> complex:
    """4 pi sum_{n<=N} (-j)^n j_n(k|r|) sum_m Y_n^m(r^) conj(Y_n^m(k^)).

    The m-sum is the addition-theorem kernel (2n+1)/(4 pi) P_n(cos gamma).
    """
    n = np.arange(N + 1)
    kernel = (2 * n + 1) / (4.0 * math.pi) * legendre_sequence(N, cos_gamma)
    return complex(4.0 * math.pi * np.sum(_phase_weights(N) * spherical_bessel_sequence(N, spatial_arg)
                                          * kernel))


def plane_wave_series(wave: PlaneWaveSpec, pt: SpacetimePoint, order: TruncationOrder,
                      c: float = DEFAULT_C) -> complex:
    """Truncated product expansion with time order P and spatial order N."""
    spatial_arg, time_arg, cos_gamma = _geometry(wave, pt, c)
    return (_carrier(wave, pt, c) * time_partial_sum(time_arg, order.P)
            * spatial_partial_sum(spatial_arg, cos_gamma, order.N))


def threshold_order(wave: PlaneWaveSpec, pt: SpacetimePoint, c: float = DEFAULT_C) -> TruncationOrder:
    """Truncation point at this sample's own (|r|, t, f, f')."""
    return truncation_point(pt.r_norm, pt.time, wave.frequency_at(c), wave.offset_frequency(c), c)


def empirical_error(wave: PlaneWaveSpec, pt: SpacetimePoint, order: TruncationOrder,
                    c: float = DEFAULT_C) -> ErrorReport:
    emp = abs(plane_wave_exact(wave, pt, c) - plane_wave_series(wave, pt, order, c))
    args = (order, wave.offset_frequency(c), pt.time, wave.frequency_at(c), pt.r_norm, c)
    try:
        bound = truncation_error_bound(*args)
        diverges = False
    except DivergenceError:
        bound, diverges = None, True
    try:
        sep = separable_error_bound(*args)
    except DivergenceError:
        sep = None
    return ErrorReport(emp, bound, order, diverges, sep)


def decay_experiment(wave: PlaneWaveSpec, pt: SpacetimePoint, steps: int,
                     c: float = DEFAULT_C) -> list[ErrorReport]:
    """Errors at orders threshold + s for s = 0..steps (both P and N raised)."""
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    base = threshold_order(wave, pt, c)
    return [empirical_error(wave, pt, base.shifted(s, s), c) for s in range(steps + 1)]


def decay_envelope(s: int) -> float:
    """Error ceiling (2/e) e^(2 - 2s) at s steps past threshold."""
    return BASE_BOUND * math.exp(2 - 2 * s)


@dataclass(frozen=True)
class Sample:
    index: int
    wave: PlaneWaveSpec
    point: SpacetimePoint


def random_samples(count: int, seed: int, max_spatial_arg: float = 10.0,
                   max_time_arg: float = 10.0, F: float = 2.4e9, W: float = 1e3,
                   c: float = DEFAULT_C) -> list[Sample]:
    """Fixed-seed (wave, point) pairs with k|r| <= max_spatial_arg and
    c k' t <= max_time_arg. Directions are uniform on the sphere; both
    arguments are uniform on their ranges."""
    rng = np.random.default_rng(seed)
    k_band = 4.0 * math.pi * W / c
    out = []
    for i in range(count):
        k_dir = rng.normal(size=3)
        r_dir = rng.normal(size=3)
        r_dir /= np.linalg.norm(r_dir)
        k_acute = rng.uniform(0.0, k_band)
        wave = PlaneWaveSpec.in_band(k_acute, k_dir, F, W, c)
        spatial_arg = rng.uniform(0.0, max_spatial_arg)
        time_arg = rng.uniform(0.0, max_time_arg)
        r = spatial_arg / wave.k_mag
        t = time_arg / (c * k_acute) if k_acute > 0 else 0.0
        point = SpacetimePoint(tuple(float(v) for v in r * r_dir), t)
        out.append(Sample(i, wave, point))
    return out

