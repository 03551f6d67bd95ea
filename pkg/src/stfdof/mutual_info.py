"""Mutual information of broadband spatial channels modelled as parallel
frequency sub-channels, each carrying N_t(f) spatial modes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import DEFAULT_C, E_PI, PhysicalConstants, SignalExtent
from .errors import DomainError


@dataclass(frozen=True)
class FrequencyGrid:
    center_F: float
    half_band_W: float
    bin_spacing: float
    bin_centers: tuple[float, ...]

    def __post_init__(self):
        if not self.bin_spacing > 0:
            raise DomainError(f"bin spacing must be positive, got {self.bin_spacing}")
        lo = self.center_F - self.half_band_W
        hi = self.center_F + self.half_band_W
        tol = 1e-12 * max(abs(hi), 1.0)
        centers = self.bin_centers
        if any(b < a for a, b in zip(centers, centers[1:])):
            raise DomainError("bin centers must be sorted ascending")
        if centers and (centers[0] < lo - tol or centers[-1] > hi + tol):
            raise DomainError(f"bin centers must lie within [{lo}, {hi}]")

    @classmethod
    def uniform(cls, center_F: float, half_band_W: float, spacing: float) -> "FrequencyGrid":
        """floor(2W / spacing) + 1 bins at the given spacing, centred in the band."""
        if not spacing > 0:
            raise DomainError(f"bin spacing must be positive, got {spacing}")
        # tolerance keeps 2WT = integer from losing a bin to rounding
        count = math.floor(2.0 * half_band_W / spacing * (1 + 1e-12)) + 1
        span = (count - 1) * spacing
        first = center_F - span / 2.0
        centers = tuple(float(first + i * spacing) for i in range(count))
        return cls(center_F, half_band_W, spacing, centers)

    @classmethod
    def for_extent(cls, extent: SignalExtent, spacing: float | None = None) -> "FrequencyGrid":
        """Grid with spacing 1/T by default (2WT + 1 bins)."""
        if spacing is None:
            spacing = 1.0 / extent.time_T if extent.time_T > 0 else math.inf
        if math.isinf(spacing):
            return cls(extent.center_F, extent.half_band_W, math.inf, (extent.center_F,))
        return cls.uniform(extent.center_F, extent.half_band_W, spacing)

    def __len__(self) -> int:
        return len(self.bin_centers)


@dataclass(frozen=True)
class MiResult:
    modes_per_bin: tuple[float, ...]
    total_modes: float
    mutual_information: float
    snr_rho: float

    def as_dict(self) -> dict:
        return {"modes_per_bin": list(self.modes_per_bin), "total_modes": self.total_modes,
                "mutual_information": self.mutual_information, "snr_rho": self.snr_rho}


def modes_at_frequency(f: float, R: float, c: float = DEFAULT_C) -> float:
    """Spatial modes (e pi R f / c + 1)^2 at a single frequency."""
    if f < 0 or R < 0:
        raise DomainError("frequency and radius must be non-negative")
    return (E_PI * R * f / c + 1.0) ** 2


def _modes(grid: FrequencyGrid, R: float, c: float) -> np.ndarray:
    if len(grid) == 0:
        raise DomainError("frequency grid is empty")
    f = np.asarray(grid.bin_centers)
    return (E_PI * R * f / c + 1.0) ** 2


def total_modes(grid: FrequencyGrid, R: float, c: float = DEFAULT_C) -> float:
    return float(np.sum(_modes(grid, R, c)))


def parallel_channel_mi(modes, rho: float) -> float:
    """sum_f N_t(f) log(1 + rho N_t(f) / N) in nats, N = sum_f N_t(f)."""
    if rho < 0:
        raise DomainError(f"rho must be non-negative, got {rho}")
    nt = np.asarray(modes, dtype=float)
    if nt.size == 0:
        raise DomainError("no sub-channels")
    n_total = np.sum(nt)
    return float(np.sum(nt * np.log1p(rho * nt / n_total)))


def mutual_information(grid: FrequencyGrid, R: float, c: float = DEFAULT_C,
                       rho: float = 1.0) -> MiResult:
    nt = _modes(grid, R, c)
    info = parallel_channel_mi(nt, rho)
    return MiResult(tuple(float(v) for v in nt), float(np.sum(nt)), info, rho)


def mi_lower_bound(extent: SignalExtent, consts: PhysicalConstants = PhysicalConstants(),
                   rho: float = 1.0) -> float:
    """rho times the spatial mode count at the lower band edge."""
    return rho * (E_PI * extent.radius_R * (extent.center_F - extent.half_band_W) / consts.c + 1.0) ** 2
