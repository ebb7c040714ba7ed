"""Products, instances and assortments.

An :class:`Instance` is immutable. Assortments are plain ``frozenset`` objects
of product ids; :meth:`Instance.assortment` validates and normalises any
iterable of ids into one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .errors import InvalidAssortmentError, InvalidInstanceError, UnsupportedModelError

ProductId = Hashable
Assortment = frozenset


def id_sort_key(pid):
    # ints sort before strings; within a type the natural order applies
    return (isinstance(pid, str), pid)


@dataclass(frozen=True)
class Product:
    id: ProductId
    level: int
    revenue: float
    utility: float

    def __post_init__(self):
        if isinstance(self.level, bool) or not isinstance(self.level, int) or self.level < 1:
            raise InvalidInstanceError(f"product {self.id!r}: level must be an integer >= 1, got {self.level!r}")
        if not math.isfinite(self.revenue) or self.revenue < 0:
            raise InvalidInstanceError(f"product {self.id!r}: revenue must be finite and >= 0, got {self.revenue!r}")
        if not math.isfinite(self.utility) or self.utility <= 0:
            raise InvalidInstanceError(f"product {self.id!r}: utility must be finite and > 0, got {self.utility!r}")


@dataclass(frozen=True)
class Instance:
    """A product universe partitioned into perception levels, plus the outside option.

    Within each level products are kept in a canonical order: nonincreasing
    revenue, ties broken by ascending id. ``level_order[level][j - 1]`` is the
    product usually written x_{level, j}.
    """

    products: tuple[Product, ...]
    outside_utility: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "products", tuple(self.products))
        if not math.isfinite(self.outside_utility) or self.outside_utility < 0:
            raise InvalidInstanceError(f"outside utility must be finite and >= 0, got {self.outside_utility!r}")
        seen = set()
        for p in self.products:
            if p.id in seen:
                raise InvalidInstanceError(f"duplicate product id {p.id!r}")
            seen.add(p.id)

    @classmethod
    def from_records(cls, records: Iterable[Mapping], outside_utility: float = 0.0) -> "Instance":
        """Build from mappings with keys ``id``, ``level``, ``revenue``, ``utility``."""
        products = [Product(r["id"], r["level"], float(r["revenue"]), float(r["utility"])) for r in records]
        return cls(tuple(products), float(outside_utility))

    def __len__(self):
        return len(self.products)

    @cached_property
    def by_id(self) -> dict:
        return {p.id: p for p in self.products}

    @cached_property
    def levels(self) -> tuple[int, ...]:
        """Distinct levels present, ascending (perceived first to last)."""
        return tuple(sorted({p.level for p in self.products}))

    @cached_property
    def level_order(self) -> dict[int, tuple[Product, ...]]:
        out = {}
        for lvl in self.levels:
            members = [p for p in self.products if p.level == lvl]
            members.sort(key=lambda p: (-p.revenue, id_sort_key(p.id)))
            out[lvl] = tuple(members)
        return out

    @cached_property
    def rank(self) -> dict:
        """Zero-based position of each product within its level's canonical order."""
        return {p.id: j for members in self.level_order.values() for j, p in enumerate(members)}

    def level_size(self, level: int) -> int:
        return len(self.level_order.get(level, ()))

    @property
    def ids(self) -> frozenset:
        return frozenset(self.by_id)

    @property
    def is_sml(self) -> bool:
        return all(p.level in (1, 2) for p in self.products)

    def require_sml(self) -> None:
        bad = sorted({p.level for p in self.products if p.level not in (1, 2)})
        if bad:
            raise UnsupportedModelError(
                f"levels {bad} are outside {{1, 2}}; use the PALM operations for k-level instances"
            )

    def assortment(self, ids: Iterable[ProductId] = ()) -> frozenset:
        """Validate ``ids`` against this instance and return them as a frozenset."""
        s = frozenset(ids)
        unknown = s - self.by_id.keys()
        if unknown:
            raise InvalidAssortmentError(f"unknown product ids: {sorted(unknown, key=id_sort_key)!r}")
        return s

    def slice(self, assortment: Iterable[ProductId], level: int) -> frozenset:
        """Members of ``assortment`` at ``level`` (the set usually written S_level)."""
        s = self.assortment(assortment)
        return frozenset(pid for pid in s if self.by_id[pid].level == level)

    def prefix(self, level: int, j: int) -> frozenset:
        """The first ``j`` products of ``level`` in canonical order; ``j = 0`` gives the empty set."""
        return frozenset(p.id for p in self.level_order.get(level, ())[:j])

    def sorted_ids(self, ids: Iterable[ProductId]) -> list:
        """Ids ordered by (level, canonical rank), the order used in reports."""
        return sorted(ids, key=lambda pid: (self.by_id[pid].level, self.rank[pid]))
