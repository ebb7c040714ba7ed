"""Certify behavioural effects that random-utility models cannot produce.

Two effects have exact inequalities under the sequential model:

* a regularity violation: some product becomes *more* likely to be bought
  when the offer set grows;
* choice overload: the no-purchase probability grows with the offer set.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .choice import palm_choice_probability, palm_no_choice_probability
from .errors import DomainError, ResourceLimitError
from .model import Instance, ProductId, id_sort_key
from .optimize import BRUTE_FORCE_CAP

# a witness needs the probability to rise by more than this
STRICT_MARGIN = 1e-12


class Effect(str, enum.Enum):
    REGULARITY_VIOLATION = "REGULARITY_VIOLATION"
    CHOICE_OVERLOAD = "CHOICE_OVERLOAD"


@dataclass(frozen=True)
class EffectWitness:
    effect: Effect
    smaller_set: frozenset
    larger_set: frozenset
    focal_product: Optional[ProductId]
    prob_before: float
    prob_after: float

    def describe(self, instance: Instance) -> str:
        small = "{" + ", ".join(map(str, instance.sorted_ids(self.smaller_set))) + "}"
        large = "{" + ", ".join(map(str, instance.sorted_ids(self.larger_set))) + "}"
        if self.effect is Effect.REGULARITY_VIOLATION:
            what = f"P({self.focal_product})"
        else:
            what = "P(no purchase)"
        return f"{self.effect.value}: {what} rises from {self.prob_before:.6f} on {small} to {self.prob_after:.6f} on {large}"


def _containment(instance: Instance, smaller, larger) -> tuple[frozenset, frozenset]:
    small = instance.assortment(smaller)
    large = instance.assortment(larger)
    if not small <= large:
        raise DomainError("the smaller set must be contained in the larger set")
    return small, large


def check_regularity_violation(
    instance: Instance,
    smaller: Iterable[ProductId],
    larger: Iterable[ProductId],
    product_id: ProductId,
    margin: float = STRICT_MARGIN,
) -> Optional[EffectWitness]:
    small, large = _containment(instance, smaller, larger)
    if product_id not in small:
        raise DomainError(f"product {product_id!r} is not in the smaller set")
    before = palm_choice_probability(instance, small, product_id)
    after = palm_choice_probability(instance, large, product_id)
    if before < after - margin:
        return EffectWitness(Effect.REGULARITY_VIOLATION, small, large, product_id, before, after)
    return None


def check_choice_overload(
    instance: Instance,
    smaller: Iterable[ProductId],
    larger: Iterable[ProductId],
    margin: float = STRICT_MARGIN,
) -> Optional[EffectWitness]:
    small, large = _containment(instance, smaller, larger)
    before = palm_no_choice_probability(instance, small)
    after = palm_no_choice_probability(instance, large)
    if before < after - margin:
        return EffectWitness(Effect.CHOICE_OVERLOAD, small, large, None, before, after)
    return None


def _sort_key(w: EffectWitness):
    return (
        w.effect.value,
        len(w.larger_set),
        sorted(map(id_sort_key, w.larger_set)),
        len(w.smaller_set),
        sorted(map(id_sort_key, w.smaller_set)),
        id_sort_key(w.focal_product) if w.focal_product is not None else (False, 0),
    )


def scan_for_effects(
    instance: Instance, max_size: int, cap: int = BRUTE_FORCE_CAP, margin: float = STRICT_MARGIN
) -> list[EffectWitness]:
    """Search every pair ``smaller ⊊ larger`` with ``|larger| <= max_size`` for both effects.

    Probabilities for each subset are computed once and reused. The result is
    sorted deterministically (effect, then larger set, smaller set, focal product).
    """
    if len(instance) > cap:
        raise ResourceLimitError(f"scanning {len(instance)} products exceeds the cap of {cap}")
    ids = sorted(instance.ids, key=id_sort_key)
    max_size = min(max_size, len(ids))
    subsets = [frozenset(c) for k in range(max_size + 1) for c in combinations(ids, k)]
    probs = {s: {pid: palm_choice_probability(instance, s, pid) for pid in s} for s in subsets}
    outside = {s: palm_no_choice_probability(instance, s) for s in subsets}

    found = []
    for large in subsets:
        members = sorted(large, key=id_sort_key)
        for k in range(len(members)):
            for c in combinations(members, k):
                small = frozenset(c)
                if outside[small] < outside[large] - margin:
                    found.append(
                        EffectWitness(Effect.CHOICE_OVERLOAD, small, large, None, outside[small], outside[large])
                    )
                for pid in c:
                    before, after = probs[small][pid], probs[large][pid]
                    if before < after - margin:
                        found.append(EffectWitness(Effect.REGULARITY_VIOLATION, small, large, pid, before, after))
    found.sort(key=_sort_key)
    return found
