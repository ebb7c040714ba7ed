"""Revenue-maximising assortments.

``solve_rol`` is the exact polynomial algorithm for the two-level SML: every
optimal assortment is the union of one revenue prefix per level, so it is
enough to score the (m1 + 1)(m2 + 1) such unions. ``solve_revenue_ordered``
is the classic single-threshold heuristic and ``solve_brute_force`` is the
exhaustive oracle used to check both.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Optional

import numpy as np

from .choice import expected_revenue, palm_expected_revenue, sequential_revenue, utility_share, weighted_revenue
from .errors import ResourceLimitError
from .model import Instance, ProductId, id_sort_key

BRUTE_FORCE_CAP = 20
PALM_ROL_CAP = 10**7
BOUND_SUBSET_CAP = 15
BOUND_SLACK = 1e-9
# relative tolerance under which two candidate revenues count as tied
TIE_TOL = 1e-12


class Method(str, enum.Enum):
    ROL = "ROL"
    RO = "RO"
    BRUTE_FORCE = "BRUTE_FORCE"
    PALM_ROL = "PALM_ROL"


@dataclass(frozen=True)
class OptimizationResult:
    assortment: frozenset
    revenue: float
    method: Method
    thresholds: Optional[tuple[int, ...]] = None
    evaluations: int = 0
    exact: bool = True

    def to_dict(self, instance: Instance) -> dict:
        doc = {
            "method": self.method.value,
            "assortment": instance.sorted_ids(self.assortment),
            "revenue": self.revenue,
            "evaluations": self.evaluations,
            "exact": self.exact,
        }
        if self.thresholds is not None:
            doc["thresholds"] = list(self.thresholds)
        return doc


@dataclass(frozen=True)
class GapReport:
    has_gap: bool
    level: Optional[int] = None
    gap_products: frozenset = frozenset()
    head: frozenset = frozenset()
    tail: frozenset = frozenset()


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    passed: bool


def _check(name: str, lhs: float, rhs: float) -> BoundCheck:
    return BoundCheck(name, float(lhs), float(rhs), bool(lhs >= rhs - BOUND_SLACK))


@dataclass
class BoundReport:
    optimal_revenue: float
    alpha_level1: Optional[float]
    alpha_level2: Optional[float]
    lambda_level1: float
    checks: list[BoundCheck] = field(default_factory=list)
    # per-product level-2 comparisons; the bound only holds in aggregate so these are never enforced
    informational: list[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _first_within_tol(values: np.ndarray) -> int:
    """Flat index of the first entry tied with the maximum."""
    flat = values.ravel()
    best = flat.max()
    return int(np.argmax(flat >= best - TIE_TOL * max(1.0, abs(best))))


# -- revenue-ordered by level ---------------------------------------------------


def _prefix_sums(instance: Instance, level: int) -> tuple[np.ndarray, np.ndarray]:
    members = instance.level_order.get(level, ())
    u = np.array([p.utility for p in members], dtype=float)
    w = np.array([p.utility * p.revenue for p in members], dtype=float)
    zero = np.zeros(1)
    return np.concatenate([zero, np.cumsum(u)]), np.concatenate([zero, np.cumsum(w)])


def _rol_grid(instance: Instance, levels: tuple[int, ...]) -> np.ndarray:
    """Revenue of every combination of per-level prefixes, indexed by prefix lengths."""
    k = len(levels)
    us, ws = [], []
    for axis, lvl in enumerate(levels):
        cu, cw = _prefix_sums(instance, lvl)
        shape = [1] * k
        shape[axis] = -1
        us.append(cu.reshape(shape))
        ws.append(cw.reshape(shape))
    grid = sequential_revenue(us, ws, instance.outside_utility)
    return np.broadcast_to(grid, tuple(instance.level_size(l) + 1 for l in levels))


def enumerate_rol_candidates(instance: Instance) -> list[frozenset]:
    """All unions of a level-1 revenue prefix and a level-2 revenue prefix, ordered by (j1, j2)."""
    instance.require_sml()
    m1, m2 = instance.level_size(1), instance.level_size(2)
    return [instance.prefix(1, j1) | instance.prefix(2, j2) for j1 in range(m1 + 1) for j2 in range(m2 + 1)]


def solve_rol(instance: Instance) -> OptimizationResult:
    instance.require_sml()
    grid = _rol_grid(instance, (1, 2))
    j1, j2 = np.unravel_index(_first_within_tol(grid), grid.shape)
    chosen = instance.prefix(1, int(j1)) | instance.prefix(2, int(j2))
    return OptimizationResult(
        assortment=chosen,
        revenue=expected_revenue(instance, chosen),
        method=Method.ROL,
        thresholds=(int(j1), int(j2)),
        evaluations=grid.size,
    )


def palm_solve_rol(instance: Instance, cap: int = PALM_ROL_CAP) -> OptimizationResult:
    """Revenue-ordered-by-level search for PALM instances with any number of levels.

    Exact for two levels. With three or more levels the search space is only
    conjectured to contain an optimum, so the result is flagged ``exact=False``.
    """
    levels = instance.levels
    size = 1
    for lvl in levels:
        size *= instance.level_size(lvl) + 1
    if size > cap:
        raise ResourceLimitError(f"{size} revenue-ordered-by-level candidates exceed the cap of {cap}")
    if not levels:
        return OptimizationResult(frozenset(), 0.0, Method.PALM_ROL, (), 1, True)
    grid = _rol_grid(instance, levels)
    idx = np.unravel_index(_first_within_tol(grid), grid.shape)
    chosen = frozenset().union(*(instance.prefix(lvl, int(j)) for lvl, j in zip(levels, idx)))
    return OptimizationResult(
        assortment=chosen,
        revenue=palm_expected_revenue(instance, chosen),
        method=Method.PALM_ROL,
        thresholds=tuple(int(j) for j in idx),
        evaluations=int(size),
        exact=len(levels) <= 2,
    )


# -- single-threshold heuristic -------------------------------------------------


def revenue_ordered_candidates(instance: Instance) -> list[frozenset]:
    """The empty set, then every set of products with revenue at least some product's revenue."""
    thresholds = sorted({p.revenue for p in instance.products}, reverse=True)
    out = [frozenset()]
    for rho in thresholds:
        out.append(frozenset(p.id for p in instance.products if p.revenue >= rho))
    return out


def solve_revenue_ordered(instance: Instance) -> OptimizationResult:
    """Best assortment among global revenue thresholds, ignoring levels when forming the sets.

    A threshold admits every product whose revenue reaches it, so products with
    equal revenue are always offered together.
    """
    instance.require_sml()
    thresholds = np.array(sorted({p.revenue for p in instance.products}, reverse=True))
    us, ws = [], []
    for lvl in (1, 2):
        members = instance.level_order.get(lvl, ())
        rev = np.array([p.revenue for p in members], dtype=float)
        u = np.array([p.utility for p in members], dtype=float)
        w = u * rev
        admitted = rev[None, :] >= thresholds[:, None]
        us.append(np.concatenate([[0.0], admitted @ u]))
        ws.append(np.concatenate([[0.0], admitted @ w]))
    revs = sequential_revenue(us, ws, instance.outside_utility)
    best = _first_within_tol(revs)
    if best == 0:
        chosen = frozenset()
    else:
        rho = thresholds[best - 1]
        chosen = frozenset(p.id for p in instance.products if p.revenue >= rho)
    counts = tuple(sum(1 for pid in chosen if instance.by_id[pid].level == lvl) for lvl in (1, 2))
    return OptimizationResult(
        assortment=chosen,
        revenue=expected_revenue(instance, chosen),
        method=Method.RO,
        thresholds=counts,
        evaluations=len(revs),
        exact=False,
    )


# -- exhaustive oracle -----------------------------------------------------------


def _subset_sums(values: np.ndarray) -> np.ndarray:
    """Sum of ``values`` over every subset; entry ``mask`` sums the positions of its set bits."""
    out = np.zeros(1 << len(values))
    for i, v in enumerate(values):
        half = 1 << i
        out[half : 2 * half] = out[:half] + v
    return out


def solve_brute_force(instance: Instance, cap: int = BRUTE_FORCE_CAP) -> OptimizationResult:
    """Score every subset of the products and return a maximiser.

    Works for any number of levels (two-level instances are scored exactly as
    the SML). Ties go to the smallest cardinality, then the lexicographically
    smallest sorted id tuple.
    """
    n = len(instance)
    if n > cap:
        raise ResourceLimitError(f"brute force over {n} products exceeds the cap of {cap}")
    products = instance.products
    us, ws = [], []
    for lvl in instance.levels:
        mask = np.array([p.level == lvl for p in products])
        u = np.array([p.utility for p in products]) * mask
        w = np.array([p.utility * p.revenue for p in products]) * mask
        us.append(_subset_sums(u))
        ws.append(_subset_sums(w))
    revs = sequential_revenue(us, ws, instance.outside_utility) if us else np.zeros(1)
    best = revs.max()
    tied = np.flatnonzero(revs >= best - TIE_TOL * max(1.0, abs(best)))

    def members(mask: int) -> frozenset:
        return frozenset(products[i].id for i in range(n) if mask >> i & 1)

    def key(mask: int):
        ids = sorted(members(mask), key=id_sort_key)
        return (len(ids), [id_sort_key(pid) for pid in ids])

    chosen = members(min((int(m) for m in tied), key=key))
    score = expected_revenue if instance.is_sml else palm_expected_revenue
    return OptimizationResult(
        assortment=chosen,
        revenue=score(instance, chosen),
        method=Method.BRUTE_FORCE,
        evaluations=len(revs),
    )


# -- structural diagnostics ------------------------------------------------------


def first_gap(instance: Instance, assortment: Iterable[ProductId]) -> GapReport:
    """Locate the first gap of an assortment that is not revenue-ordered by level.

    Positions refer to the canonical per-level order, so with distinct revenues
    this is exactly the revenue-based construction: the gap is the first run
    of excluded products that precedes an offered one, the head is the offered
    products above it and the tail the offered products below it.
    """
    instance.require_sml()
    s = instance.assortment(assortment)
    for lvl in (1, 2):
        order = instance.level_order.get(lvl, ())
        flags = [p.id in s for p in order]
        if not any(flags):
            continue
        last_in = max(j for j, f in enumerate(flags) if f)
        first_out = next((j for j, f in enumerate(flags) if not f), None)
        if first_out is None or first_out > last_in:
            continue
        end = next(j for j in range(first_out, len(flags)) if flags[j])
        ids = [p.id for p in order]
        return GapReport(
            has_gap=True,
            level=lvl,
            gap_products=frozenset(ids[first_out:end]),
            head=frozenset(ids[:first_out]),
            tail=frozenset(pid for pid in ids[end:] if pid in s),
        )
    return GapReport(has_gap=False)


def _subset_weighted_revenues(instance: Instance, ids: list) -> np.ndarray:
    """Weighted revenue of every nonempty subset of ``ids``."""
    u = np.array([instance.by_id[pid].utility for pid in ids])
    w = np.array([instance.by_id[pid].utility * instance.by_id[pid].revenue for pid in ids])
    return _subset_sums(w)[1:] / _subset_sums(u)[1:]


def verify_optimality_bounds(
    instance: Instance, optimal: OptimizationResult, subset_cap: int = BOUND_SUBSET_CAP
) -> BoundReport:
    """Evaluate the structural bounds that every optimal assortment satisfies.

    Checks, with slack ``BOUND_SLACK``:

    * level-1 weighted revenue is at least the optimal revenue;
    * level-2 weighted revenue is at least R* / (1 - share of level 1);
    * every nonempty subset of one level (and of the whole assortment) has
      weighted revenue at least R*; exhaustive when the assortment has at most
      ``subset_cap`` products, singletons only otherwise;
    * every offered product earns at least R*.

    A non-optimal input simply produces failing checks.
    """
    instance.require_sml()
    s = instance.assortment(optimal.assortment)
    r_star = optimal.revenue
    s1, s2 = instance.slice(s, 1), instance.slice(s, 2)
    a1 = weighted_revenue(instance, s1) if s1 else None
    a2 = weighted_revenue(instance, s2) if s2 else None
    share1 = utility_share(instance, s1, s) if s else 0.0
    report = BoundReport(optimal_revenue=r_star, alpha_level1=a1, alpha_level2=a2, lambda_level1=share1)

    if a1 is not None:
        report.checks.append(_check("level1_weighted_revenue", a1, r_star))
    if a2 is not None:
        report.checks.append(_check("level2_weighted_revenue", a2, r_star / (1.0 - share1)))

    exhaustive = len(s) <= subset_cap
    groups = [("level1_subsets", s1), ("level2_subsets", s2)]
    if exhaustive:
        groups.append(("assortment_subsets", s))
    for name, group in groups:
        if not group:
            continue
        ids = instance.sorted_ids(group)
        if exhaustive:
            lhs = _subset_weighted_revenues(instance, ids).min()
        else:
            lhs = min(instance.by_id[pid].revenue for pid in ids)
        report.checks.append(_check(name, lhs, r_star))

    for pid in instance.sorted_ids(s):
        report.checks.append(_check(f"product_revenue[{pid}]", instance.by_id[pid].revenue, r_star))

    if s2:
        level2_rhs = r_star / (1.0 - share1)
        for pid in instance.sorted_ids(s2):
            report.informational.append(_check(f"level2_product[{pid}]", instance.by_id[pid].revenue, level2_rhs))
    return report


def all_subsets(instance: Instance) -> list[frozenset]:
    """Every subset of the instance's products, smallest first (for small instances only)."""
    ids = sorted(instance.ids, key=id_sort_key)
    out = []
    for bits in cartesian((False, True), repeat=len(ids)):
        out.append(frozenset(pid for pid, b in zip(ids, bits) if b))
    out.sort(key=lambda s: (len(s), sorted(map(id_sort_key, s))))
    return out
