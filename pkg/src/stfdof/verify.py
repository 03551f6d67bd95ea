"""Self-checking suites: each runs one family of invariants and counts
violations. A suite passes iff every check has zero violations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import special
from .bounds import E_PI, PhysicalConstants, SignalExtent, dof_3d_closed_form, dof_3d_discrete_sum
from .mutual_info import (FrequencyGrid, mi_lower_bound, mutual_information,
                          parallel_channel_mi)
from .oracle import (BASE_BOUND, decay_envelope, empirical_error, random_samples,
                     threshold_order)
from .sweep import FIG1, FIG1_WIDE, FIG2, FIG2_WIDE, extent_of

SUITES = ("bessel", "truncation", "sum_oracle", "mi")
DEFAULT_SEED = 42

TRUNCATION_SAMPLES = 200
DECAY_STEPS = 10
CONVERGENCE_SHIFT = 30
CONVERGENCE_TOL = 1e-8
RECURRENCE_RTOL = 1e-10
SUM_ORACLE_RTOL = 0.10


@dataclass
class Check:
    """Tally for one invariant. ``worst`` is the largest value/limit ratio
    seen (<= 1 means within the limit), or the largest deviation where the
    check compares against a tolerance."""

    name: str
    evaluated: int = 0
    violations: int = 0
    worst: float = 0.0
    note: str = ""

    def record(self, value: float, limit: float, strict: bool = False) -> bool:
        self.evaluated += 1
        ratio = value / limit if limit > 0 else (0.0 if value <= 0 else math.inf)
        self.worst = max(self.worst, ratio)
        ok = value < limit if strict else value <= limit
        if not ok:
            self.violations += 1
        return ok

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        worst = self.worst if math.isfinite(self.worst) else None
        return {"name": self.name, "evaluated": self.evaluated, "violations": self.violations,
                "worst_ratio": worst, "passed": self.passed, "note": self.note}


@dataclass
class SuiteReport:
    suite: str
    seed: int | None
    checks: list[Check]
    records: list[dict] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(c.violations for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def run_bessel() -> SuiteReport:
    bound = Check("bessel_bound_grid")
    xs = np.round(np.arange(0, 501) * 0.1, 10)
    for x in xs:
        seq = special.spherical_bessel_sequence(50, float(x))
        for n in range(51):
            bound.record(abs(seq[n]), special.spherical_bessel_bound(n, float(x)))

    recur = Check("recurrence_consistency", note=f"relative to the largest term, limit {RECURRENCE_RTOL}")
    for x in np.linspace(0.5, 50.0, 100):
        x = float(x)
        j = [special.spherical_bessel_j(n, x) for n in range(102)]
        for n in range(1, 101):
            lhs = j[n - 1] + j[n + 1]
            rhs = (2 * n + 1) / x * j[n]
            scale = max(abs(j[n - 1]), abs(j[n + 1]), abs(rhs))
            if scale == 0.0:
                continue
            recur.record(abs(lhs - rhs) / scale / RECURRENCE_RTOL, 1.0)

    gamma = Check("gamma_lower_bound", note="strict, ratio to Gamma(n+1/2)")
    for n in range(101):
        gamma.record(math.exp(math.log(special.gamma_lower_bound(n)) - math.lgamma(n + 0.5)), 1.0,
                     strict=True)

    legendre = Check("legendre_bounded")
    kernel = Check("addition_kernel_bound")
    for n in range(0, 101, 5):
        for u in np.linspace(-1, 1, 41):
            legendre.record(abs(special.legendre_p(n, float(u))), 1.0 + 1e-12)
            kernel.record(abs(special.harmonic_addition_kernel(n, float(u))), (2 * n + 1) / (2 * math.pi))
        legendre.record(abs(special.legendre_p(n, 1.0) - 1.0), 1e-12)
    return SuiteReport("bessel", None, [bound, recur, gamma, legendre, kernel])


def run_truncation(seed: int = DEFAULT_SEED, samples: int = TRUNCATION_SAMPLES,
                   c: float = PhysicalConstants().c) -> SuiteReport:
    base = Check("base_bound_at_threshold", note="limit 2/e")
    envelope = Check("decay_envelope", note=f"limit (2/e) e^(2-2s), s=1..{DECAY_STEPS}")
    product = Check("product_bound_dominance", note="orders threshold+0..10 with convergent bound")
    separable = Check("separable_bound_dominance", note="sum-of-tails bound, orders threshold+0..10")
    converge = Check("series_convergence", note=f"|error| at threshold+{CONVERGENCE_SHIFT}, limit {CONVERGENCE_TOL}")
    records = []
    for sample in random_samples(samples, seed, c=c):
        wave, pt = sample.wave, sample.point
        start = threshold_order(wave, pt, c)
        for s in range(DECAY_STEPS + 1):
            rep = empirical_error(wave, pt, start.shifted(s, s), c)
            ok = True
            if s == 0:
                ok &= base.record(rep.empirical, BASE_BOUND)
            else:
                ok &= envelope.record(rep.empirical, decay_envelope(s))
            if rep.analytic_bound is not None:
                ok &= product.record(rep.empirical, rep.analytic_bound)
            if rep.separable_bound is not None:
                separable.record(rep.empirical, rep.separable_bound)
            records.append({"seed": seed, "sample": sample.index, "wave": wave.as_dict(),
                            "point": pt.as_dict(), "order": {"P": rep.order.P, "N": rep.order.N},
                            "shift": s, "empirical": rep.empirical, "bound": rep.analytic_bound,
                            "pass": bool(ok)})
        far = empirical_error(wave, pt, start.shifted(CONVERGENCE_SHIFT, CONVERGENCE_SHIFT), c)
        converge.record(far.empirical, CONVERGENCE_TOL)
    return SuiteReport("truncation", seed, [base, envelope, product, converge, separable], records)


def _oracle_grids():
    return {"fig1": FIG1, "fig2": FIG2, "fig1-wide": FIG1_WIDE, "fig2-wide": FIG2_WIDE}


def sum_oracle_deviation(extent: SignalExtent, consts: PhysicalConstants) -> tuple[float, bool]:
    """Relative gap between the discrete mode sum and the closed form, and
    whether the point is in the regime N1 >= 20, 2 e pi W T >= 1."""
    closed = dof_3d_closed_form(extent, consts)
    discrete = dof_3d_discrete_sum(extent, consts)
    qualifies = closed.N1 >= 20 and 2 * E_PI * extent.half_band_W * extent.time_T >= 1
    return abs(discrete - closed.total) / closed.total, qualifies


def run_sum_oracle(consts: PhysicalConstants = PhysicalConstants()) -> SuiteReport:
    checks, info = [], {}
    for name, spec in _oracle_grids().items():
        chk = Check(f"sum_oracle_{name}", note=f"relative deviation, limit {SUM_ORACLE_RTOL}")
        for p in spec.points():
            dev, qualifies = sum_oracle_deviation(extent_of(p), consts)
            if qualifies:
                chk.record(dev, SUM_ORACLE_RTOL)
        chk.note += f"; {chk.evaluated} grid points with N1 >= 20 and 2 e pi W T >= 1"
        info[name] = {"qualifying_points": chk.evaluated, "worst_deviation": chk.worst * SUM_ORACLE_RTOL}
        checks.append(chk)
    return SuiteReport("sum_oracle", None, checks, info=info)


def fig1_extent() -> SignalExtent:
    return SignalExtent(radius_R=0.25, time_T=5e-4, center_F=2.4e9, half_band_W=1e3)


def run_mi(consts: PhysicalConstants = PhysicalConstants()) -> SuiteReport:
    limit = Check("constant_modes_limit", note="|I - rho N_t| <= rho^2 N_t / (2B), rho=1")
    for nt in (1.0, 326.0):
        for B in (10, 100, 1000):
            info = parallel_channel_mi([nt] * B, 1.0)
            limit.record(abs(info - nt), nt / (2 * B))

    monotone = Check("monotone_in_rho")
    linear = Check("log_linear_ceiling", note="I <= sum N_t rho N_t / N")
    extent = fig1_extent()
    grids = [FrequencyGrid.for_extent(extent),
             FrequencyGrid.uniform(2.4e6, 2.4e6, 1e5)]
    for grid, R in zip(grids, (extent.radius_R, 20.0)):
        prev = -math.inf
        for rho in np.round(np.arange(0, 101) * 0.1, 10):
            res = mutual_information(grid, R, consts.c, float(rho))
            monotone.record(prev - res.mutual_information, 0.0)
            prev = res.mutual_information
            nt = np.asarray(res.modes_per_bin)
            linear.record(res.mutual_information, float(np.sum(nt * rho * nt / res.total_modes)) or 0.0)

    lower = Check("lower_bound_fig1", note="I >= rho (e pi R (F-W)/c + 1)^2 at rho=0.01")
    res = mutual_information(FrequencyGrid.for_extent(extent), extent.radius_R, consts.c, 0.01)
    bound = mi_lower_bound(extent, consts, 0.01)
    lower.record(bound, res.mutual_information)

    jensen = Check("increasing_profile_beats_flat", note="equal total modes N")
    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(50):
        B = int(rng.integers(2, 40))
        profile = np.sort(rng.uniform(1, 500, B))
        flat = np.full(B, profile.mean())
        for rho in (0.1, 1.0, 10.0):
            jensen.record(parallel_channel_mi(flat, rho), parallel_channel_mi(profile, rho) * (1 + 1e-12))
    info = {"fig1_bins": len(FrequencyGrid.for_extent(extent)), "fig1_I": res.mutual_information,
            "fig1_lower_bound": bound}
    return SuiteReport("mi", None, [limit, monotone, linear, lower, jensen], info=info)


def run_suite(name: str, seed: int = DEFAULT_SEED,
              consts: PhysicalConstants = PhysicalConstants()) -> SuiteReport:
    if name == "bessel":
        return run_bessel()
    if name == "truncation":
        return run_truncation(seed, c=consts.c)
    if name == "sum_oracle":
        return run_sum_oracle(consts)
    if name == "mi":
        return run_mi(consts)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
