"""Independent reference computations used by the tests.

Everything here works on plain ``(level, revenue, utility)`` tuples with exact
``Fraction`` arithmetic and never imports the package under test.
"""
from fractions import Fraction
from itertools import combinations


def exact(x):
    """Exact rational value of a float (no rounding)."""
    return Fraction(x)


def palm_probs(items, offered, u0):
    """Choice probability of every offered key and of the outside option.

    ``items`` maps key -> (level, revenue, utility). Customers scan levels in
    ascending order; within the scan each product has Luce weight
    u / (sum of all offered utilities + u0).
    """
    offered = list(offered)
    denom = sum(exact(items[k][2]) for k in offered) + exact(u0)
    if not offered:
        return {}, Fraction(1)
    levels = sorted({items[k][0] for k in offered})
    reach = Fraction(1)
    probs = {}
    for lvl in levels:
        in_level = [k for k in offered if items[k][0] == lvl]
        for k in in_level:
            probs[k] = reach * exact(items[k][2]) / denom
        reach *= 1 - sum(exact(items[k][2]) for k in in_level) / denom
    return probs, reach


def revenue(items, offered, u0):
    offered = list(offered)
    if not offered:
        return Fraction(0)
    probs, _ = palm_probs(items, offered, u0)
    return sum(p * exact(items[k][1]) for k, p in probs.items())


def best_subset(items, u0):
    """Maximum revenue over all subsets, and every subset attaining it."""
    best, argbest, _ = ranked_subsets(items, u0)
    return best, argbest


def ranked_subsets(items, u0):
    """Best revenue, its maximisers, and the best revenue among all other subsets."""
    keys = sorted(items)
    scored = [
        (revenue(items, combo, u0), frozenset(combo))
        for k in range(len(keys) + 1)
        for combo in combinations(keys, k)
    ]
    best = max(r for r, _ in scored)
    argbest = [s for r, s in scored if r == best]
    runner_up = max((r for r, _ in scored if r < best), default=None)
    return best, argbest, runner_up


def revenue_thresholds(items):
    """Every threshold set (all products with revenue >= some product's revenue) plus the empty set."""
    out = [frozenset()]
    for rho in sorted({v[1] for v in items.values()}, reverse=True):
        out.append(frozenset(k for k, v in items.items() if v[1] >= rho))
    return out


def items_of(instance):
    return {p.id: (p.level, p.revenue, p.utility) for p in instance.products}
