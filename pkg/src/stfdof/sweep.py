"""Two-parameter grids of the closed-form count, as plotted in the
R-W surface figures, with lossless CSV/JSON emission."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import PhysicalConstants, SignalExtent, dof_3d_closed_form
from .errors import DomainError

PARAMS = ("R", "W", "T", "F")
COLUMNS = ("R", "W", "T", "F", "N0", "N1", "D1", "D2", "total")


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in PARAMS:
            raise DomainError(f"unknown sweep axis {self.name!r}; choose from {', '.join(PARAMS)}")
        if self.count < 2:
            raise DomainError(f"axis {self.name} needs count >= 2, got {self.count}")
        if not self.start < self.stop:
            raise DomainError(f"axis {self.name} needs start < stop, got {self.start} >= {self.stop}")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """Parse ``NAME:start:stop:count``."""
        try:
            name, start, stop, count = text.split(":")
            return cls(name, float(start), float(stop), int(count))
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"axis must look like NAME:start:stop:count, got {text!r}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis
    fixed: dict = field(default_factory=dict)
    output_format: str = "csv"

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise DomainError("sweep axes must name distinct parameters")
        missing = set(PARAMS) - {self.axis1.name, self.axis2.name} - set(self.fixed)
        if missing:
            raise DomainError(f"fixed values missing for {', '.join(sorted(missing))}")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"output format must be csv or json, got {self.output_format!r}")

    def points(self):
        for v1 in self.axis1.values():
            for v2 in self.axis2.values():
                p = {k: float(v) for k, v in self.fixed.items() if k in PARAMS}
                p[self.axis1.name] = float(v1)
                p[self.axis2.name] = float(v2)
                yield p

    def as_dict(self) -> dict:
        return {"axis1": vars(self.axis1), "axis2": vars(self.axis2), "fixed": dict(self.fixed),
                "format": self.output_format}


# F = 2.4 GHz, T = 0.5 ms, R up to 2 wavelengths, W up to 1 kHz
FIG1 = SweepSpec(Axis("R", 0.005, 0.25, 50), Axis("W", 20.0, 1e3, 50), {"F": 2.4e9, "T": 5e-4})
# F = 2.4 MHz, T = 1 us, R up to a quarter centre wavelength, W up to F
FIG2 = SweepSpec(Axis("R", 0.625, 31.25, 50), Axis("W", 4.8e4, 2.4e6, 50), {"F": 2.4e6, "T": 1e-6})
# same settings pushed to radii where N1 >= 20, for the discrete-sum check
FIG1_WIDE = SweepSpec(Axis("R", 0.02, 1.0, 50), Axis("W", 20.0, 1e3, 50), {"F": 2.4e9, "T": 5e-4})
FIG2_WIDE = SweepSpec(Axis("R", 10.0, 500.0, 50), Axis("W", 4.8e4, 2.4e6, 50), {"F": 2.4e6, "T": 1e-6})

PRESETS = {"fig1": FIG1, "fig2": FIG2, "fig1-wide": FIG1_WIDE, "fig2-wide": FIG2_WIDE}


def extent_of(p: dict) -> SignalExtent:
    return SignalExtent(radius_R=p["R"], time_T=p["T"], center_F=p["F"], half_band_W=p["W"])


def evaluate_point(p: dict, consts: PhysicalConstants) -> dict:
    b = dof_3d_closed_form(extent_of(p), consts)
    return {"R": p["R"], "W": p["W"], "T": p["T"], "F": p["F"], **b.as_dict()}


def run_sweep(spec: SweepSpec, consts: PhysicalConstants = PhysicalConstants(),
              jobs: int = 1) -> list[dict]:
    """Rows in grid order (axis1 outer, axis2 inner) whatever ``jobs`` is."""
    points = list(spec.points())
    for p in points:
        extent_of(p)  # reject the whole sweep before evaluating anything
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda p: evaluate_point(p, consts), points))
    return [evaluate_point(p, consts) for p in points]


def grid_of(rows: list[dict], spec: SweepSpec) -> np.ndarray:
    """Totals reshaped to (axis1.count, axis2.count)."""
    return np.array([r["total"] for r in rows]).reshape(spec.axis1.count, spec.axis2.count)


def knee_radius(rows: list[dict], spec: SweepSpec,
                consts: PhysicalConstants = PhysicalConstants()) -> float | None:
    """Smallest grid radius at which the count on the widest-band line is
    at least twice its R -> 0 value, i.e. spatial modes contribute as much
    as the time-frequency ones. None if R is not swept or never doubles."""
    if "R" not in (spec.axis1.name, spec.axis2.name):
        return None
    other = spec.axis2 if spec.axis1.name == "R" else spec.axis1
    w_idx = int(np.argmax(other.values()))
    line = [r for r in rows if r[other.name] == other.values()[w_idx]]
    base = dof_3d_closed_form(extent_of({**line[0], "R": 0.0}), consts).total
    for r in line:
        if r["total"] >= 2.0 * base:
            return r["R"]
    return None


def _fmt(v: float) -> str:
    return repr(float(v))


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"
