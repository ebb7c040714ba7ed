"""Choice probabilities and expected revenue under the SML and PALM models.

In the two-level SML a customer first looks at the offered level-1 products
and picks among them with MNL probabilities computed over the *whole* offer
set plus the outside option. Only if nothing is picked does she move on to the
offered level-2 products. PALM is the same process with any number of levels,
smaller level numbers being perceived first.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .model import Instance, ProductId


def _members(instance: Instance, assortment: Iterable[ProductId]):
    return [instance.by_id[pid] for pid in instance.assortment(assortment)]


def _denominator(instance: Instance, members) -> float:
    return sum(p.utility for p in members) + instance.outside_utility


def total_utility(instance: Instance, subset: Iterable[ProductId]) -> float:
    """Sum of intrinsic utilities of ``subset`` (0 for the empty set)."""
    return float(sum(p.utility for p in _members(instance, subset)))


def weighted_revenue(instance: Instance, subset: Iterable[ProductId]) -> float:
    """Utility-weighted average revenue of a nonempty subset.

    This is the MNL revenue of ``subset`` with no outside option; for a
    singleton it is the product's own revenue.
    """
    members = _members(instance, subset)
    if not members:
        raise DomainError("weighted revenue is undefined for the empty set")
    if len(members) == 1:
        return members[0].revenue
    u = sum(p.utility for p in members)
    return sum(p.utility * p.revenue for p in members) / u


def utility_share(instance: Instance, part: Iterable[ProductId], whole: Iterable[ProductId]) -> float:
    """Utility of ``part`` relative to the utility of ``whole`` plus the outside option."""
    z = instance.assortment(part)
    s = instance.assortment(whole)
    if not z <= s:
        raise DomainError("part must be a subset of whole")
    if not z:
        return 0.0
    return total_utility(instance, z) / (total_utility(instance, s) + instance.outside_utility)


def choice_probability(instance: Instance, assortment: Iterable[ProductId], product_id: ProductId) -> float:
    """Probability that ``product_id`` is bought when ``assortment`` is offered (two-level SML)."""
    instance.require_sml()
    members = _members(instance, assortment)
    if product_id not in {p.id for p in members}:
        raise DomainError(f"product {product_id!r} is not in the assortment")
    denom = _denominator(instance, members)
    x = instance.by_id[product_id]
    mnl = x.utility / denom
    if x.level == 1:
        return mnl
    level1 = sum(p.utility for p in members if p.level == 1)
    return (1.0 - level1 / denom) * mnl


def no_choice_probability(instance: Instance, assortment: Iterable[ProductId]) -> float:
    """Probability of leaving without a purchase, computed as one minus the purchase probabilities."""
    s = instance.assortment(assortment)
    instance.require_sml()
    p0 = 1.0 - sum(choice_probability(instance, s, pid) for pid in s)
    return min(1.0, max(0.0, p0))


def expected_revenue(instance: Instance, assortment: Iterable[ProductId]) -> float:
    """Expected revenue of offering ``assortment``: sum of choice probability times revenue."""
    s = instance.assortment(assortment)
    instance.require_sml()
    return float(sum(choice_probability(instance, s, pid) * instance.by_id[pid].revenue for pid in s))


def expected_revenue_by_level(instance: Instance, assortment: Iterable[ProductId]) -> float:
    """Expected revenue written through per-level weighted revenues and utilities.

    Algebraically equal to :func:`expected_revenue`; kept as a separate route
    so the two can be checked against each other.
    """
    s = instance.assortment(assortment)
    instance.require_sml()
    s1 = instance.slice(s, 1)
    s2 = instance.slice(s, 2)
    u1 = total_utility(instance, s1)
    u2 = total_utility(instance, s2)
    denom = u1 + u2 + instance.outside_utility
    if denom == 0:
        return 0.0
    rev = 0.0
    if s1:
        rev += weighted_revenue(instance, s1) * u1 / denom
    if s2:
        rev += weighted_revenue(instance, s2) * u2 / denom * (1.0 - u1 / denom)
    return rev


# -- PALM ---------------------------------------------------------------------


def luce_share(instance: Instance, subset: Iterable[ProductId], assortment: Iterable[ProductId]) -> float:
    """Luce weight of ``subset`` inside the offered ``assortment`` (outside option included)."""
    s = instance.assortment(assortment)
    z = instance.assortment(subset)
    if not z <= s:
        raise DomainError("subset must be contained in the assortment")
    if not z:
        return 0.0
    return sum(instance.by_id[pid].utility for pid in z) / _denominator(instance, _members(instance, s))


def _classes(instance: Instance, s: frozenset) -> dict[int, float]:
    """Total utility of each perception class present in ``s``, keyed by level."""
    out: dict[int, float] = {}
    for pid in s:
        p = instance.by_id[pid]
        out[p.level] = out.get(p.level, 0.0) + p.utility
    return out


def palm_choice_probability(instance: Instance, assortment: Iterable[ProductId], product_id: ProductId) -> float:
    """Choice probability under PALM with any number of levels.

    The product's Luce weight times the probability of passing over every
    class perceived before it.
    """
    s = instance.assortment(assortment)
    if product_id not in s:
        raise DomainError(f"product {product_id!r} is not in the assortment")
    denom = _denominator(instance, _members(instance, s))
    x = instance.by_id[product_id]
    prob = x.utility / denom
    for lvl, u in _classes(instance, s).items():
        if lvl < x.level:
            prob *= 1.0 - u / denom
    return prob


def palm_no_choice_probability(instance: Instance, assortment: Iterable[ProductId]) -> float:
    """Probability of passing over every offered class (product over classes)."""
    s = instance.assortment(assortment)
    if not s:
        return 1.0
    denom = _denominator(instance, _members(instance, s))
    prob = 1.0
    for u in _classes(instance, s).values():
        prob *= 1.0 - u / denom
    return prob


def palm_expected_revenue(instance: Instance, assortment: Iterable[ProductId]) -> float:
    s = instance.assortment(assortment)
    return float(sum(palm_choice_probability(instance, s, pid) * instance.by_id[pid].revenue for pid in s))


def sequential_revenue(utilities: Sequence, weighted: Sequence, outside_utility: float) -> np.ndarray:
    """Vectorised PALM revenue from per-level aggregates.

    ``utilities[i]`` and ``weighted[i]`` hold, for the i-th perceived level,
    the offered utility sum and the offered sum of utility times revenue. All
    arrays must broadcast together; the result has the broadcast shape. An
    offer with zero total weight (empty set, no outside utility) earns 0.
    """
    utilities = [np.asarray(u, dtype=float) for u in utilities]
    weighted = [np.asarray(w, dtype=float) for w in weighted]
    denom = outside_utility + sum(utilities, np.zeros(()))
    safe = np.where(denom > 0, denom, 1.0)
    reach = np.ones_like(safe)
    rev = np.zeros_like(safe)
    for u, w in zip(utilities, weighted):
        rev = rev + reach * w / safe
        reach = reach * (1.0 - u / safe)
    return np.where(denom > 0, rev, 0.0)
