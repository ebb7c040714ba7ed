"""Seeded instance families and the RO-versus-ROL benchmark.

Instances are drawn with numpy's PCG64 generator. Instance ``index`` of a
family uses the ``index``-th child of ``SeedSequence(seed)``, so every
instance is reproducible on its own and across platforms.
"""
from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Mapping, Optional, TextIO, Union

import numpy as np

from .errors import ConfigError, SMLError
from .model import Instance, Product
from .optimize import solve_revenue_ordered, solve_rol

DEFAULT_SIZES = ((5, 5), (10, 10), (20, 20), (50, 50))
DEFAULT_OUTSIDE_UTILITIES = (0.0, 1.0, 2.5, 5.0, 10.0)
DEFAULT_SEED = 20190501
CSV_COLUMNS = ("n1", "n2", "u0", "avg_gap_pct", "worst_gap_pct", "avg_time_ro_s", "avg_time_rol_s")


@dataclass(frozen=True)
class FamilyConfig:
    n1: int
    n2: int
    u0: float
    instances: int = 100
    seed: int = DEFAULT_SEED
    revenue_range: tuple[float, float] = (0.0, 10.0)
    utility_range: tuple[float, float] = (0.0, 10.0)

    def __post_init__(self):
        for name in ("n1", "n2", "instances", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.n1 < 0 or self.n2 < 0:
            raise ConfigError("n1 and n2 must be nonnegative")
        if self.instances < 1:
            raise ConfigError("a family needs at least one instance")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in an unsigned 64-bit integer")
        if not math.isfinite(self.u0) or self.u0 < 0:
            raise ConfigError(f"u0 must be finite and nonnegative, got {self.u0!r}")
        for name in ("revenue_range", "utility_range"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or hi < lo:
                raise ConfigError(f"{name} must be a finite interval with 0 <= low <= high, got {(lo, hi)!r}")
        if self.utility_range[1] <= 0:
            raise ConfigError("utility_range must contain positive values")

    @classmethod
    def from_dict(cls, doc: Mapping) -> "FamilyConfig":
        known = {f.name for f in fields(cls)}
        extra = set(doc) - known
        if extra:
            raise ConfigError(f"unknown family keys: {sorted(extra)}")
        kwargs = dict(doc)
        try:
            if "u0" in kwargs:
                kwargs["u0"] = float(kwargs["u0"])
            for name in ("revenue_range", "utility_range"):
                if name in kwargs:
                    lo, hi = kwargs[name]
                    kwargs[name] = (float(lo), float(hi))
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid family config {dict(doc)!r}: {exc}") from exc


def default_grid(instances: int = 100, seed: int = DEFAULT_SEED) -> list[FamilyConfig]:
    """The 20 families: four size pairs times five outside-option utilities."""
    return [
        FamilyConfig(n1, n2, u0, instances=instances, seed=seed)
        for n1, n2 in DEFAULT_SIZES
        for u0 in DEFAULT_OUTSIDE_UTILITIES
    ]


def _rng(config: FamilyConfig, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(config.seed), spawn_key=(int(index),))))


def generate_instance(config: FamilyConfig, index: int) -> Instance:
    """Instance ``index`` of the family: i.i.d. uniform revenues, then i.i.d. uniform utilities.

    Products ``x1_1 .. x1_n1`` sit on level 1 and ``x2_1 .. x2_n2`` on level 2.
    A utility draw of exactly zero is redrawn.
    """
    if not 0 <= index < config.instances:
        raise ConfigError(f"index {index} outside 0..{config.instances - 1}")
    rng = _rng(config, index)
    n = config.n1 + config.n2
    revenues = rng.uniform(*config.revenue_range, size=n)
    utilities = rng.uniform(*config.utility_range, size=n)
    for i in range(n):
        while utilities[i] <= 0:
            utilities[i] = rng.uniform(*config.utility_range)
    products = []
    for i in range(n):
        level, j = (1, i + 1) if i < config.n1 else (2, i - config.n1 + 1)
        products.append(Product(f"x{level}_{j}", level, float(revenues[i]), float(utilities[i])))
    return Instance(tuple(products), float(config.u0))


def gap_pct(optimal_revenue: float, heuristic_revenue: float) -> float:
    if optimal_revenue <= 0:
        return 0.0
    return max(0.0, 100.0 * (optimal_revenue - heuristic_revenue) / optimal_revenue)


def optimality_gap(instance: Instance) -> float:
    """Percentage of the optimal revenue lost by the single-threshold heuristic."""
    return gap_pct(solve_rol(instance).revenue, solve_revenue_ordered(instance).revenue)


@dataclass(frozen=True)
class InstanceOutcome:
    index: int
    rol_revenue: float
    ro_revenue: float
    gap_pct: float
    time_ro_s: float
    time_rol_s: float


@dataclass
class FamilyRow:
    n1: int
    n2: int
    u0: float
    avg_gap_pct: float
    worst_gap_pct: float
    avg_time_ro_s: float
    avg_time_rol_s: float
    instances: int
    details: Optional[list[InstanceOutcome]] = None

    def csv_record(self) -> list:
        return [self.n1, self.n2, self.u0, self.avg_gap_pct, self.worst_gap_pct, self.avg_time_ro_s, self.avg_time_rol_s]


@dataclass
class BenchmarkReport:
    rows: list[FamilyRow] = field(default_factory=list)
    errors: list[tuple[str, str]] = field(default_factory=list)

    def gap_columns(self) -> list[tuple]:
        return [(r.n1, r.n2, r.u0, r.avg_gap_pct, r.worst_gap_pct) for r in self.rows]

    def write_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row.csv_record()])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def format_table(self) -> str:
        head = f"{'(n1,n2)':>10} {'u0':>6} {'avg gap %':>10} {'worst gap %':>12} {'RO time s':>10} {'ROL time s':>11}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{f'({r.n1},{r.n2})':>10} {r.u0:>6g} {r.avg_gap_pct:>10.3f} {r.worst_gap_pct:>12.3f} "
                f"{r.avg_time_ro_s:>10.4f} {r.avg_time_rol_s:>11.4f}"
            )
        for label, message in self.errors:
            lines.append(f"{label}: FAILED ({message})")
        return "\n".join(lines)


def run_family(config: FamilyConfig, keep_details: bool = False) -> FamilyRow:
    outcomes = []
    for index in range(config.instances):
        instance = generate_instance(config, index)
        t0 = time.perf_counter()
        ro = solve_revenue_ordered(instance)
        t1 = time.perf_counter()
        rol = solve_rol(instance)
        t2 = time.perf_counter()
        outcomes.append(InstanceOutcome(index, rol.revenue, ro.revenue, gap_pct(rol.revenue, ro.revenue), t1 - t0, t2 - t1))
    gaps = [o.gap_pct for o in outcomes]
    worst = max(gaps)
    return FamilyRow(
        n1=config.n1,
        n2=config.n2,
        u0=config.u0,
        avg_gap_pct=min(math.fsum(gaps) / len(gaps), worst),
        worst_gap_pct=worst,
        avg_time_ro_s=math.fsum(o.time_ro_s for o in outcomes) / len(outcomes),
        avg_time_rol_s=math.fsum(o.time_rol_s for o in outcomes) / len(outcomes),
        instances=len(outcomes),
        details=outcomes if keep_details else None,
    )


def run_benchmark(
    configs: Iterable[Union[FamilyConfig, Mapping]], keep_details: bool = False
) -> BenchmarkReport:
    """Run every family; a family that fails is recorded in ``errors`` and the rest still run."""
    report = BenchmarkReport()
    for i, cfg in enumerate(configs):
        label = f"family {i}"
        try:
            if not isinstance(cfg, FamilyConfig):
                cfg = FamilyConfig.from_dict(cfg)
            label = f"family {i} (n1={cfg.n1}, n2={cfg.n2}, u0={cfg.u0:g})"
            report.rows.append(run_family(cfg, keep_details))
        except SMLError as exc:
            report.errors.append((label, str(exc)))
    return report


def config_to_dict(config: FamilyConfig) -> dict:
    doc = asdict(config)
    doc["revenue_range"] = list(config.revenue_range)
    doc["utility_range"] = list(config.utility_range)
    return doc
