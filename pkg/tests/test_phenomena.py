import pytest
from hypothesis import given, settings

from smlassort import (
    DomainError,
    Effect,
    Instance,
    Product,
    ResourceLimitError,
    check_choice_overload,
    check_regularity_violation,
    choice_probability,
    no_choice_probability,
    scan_for_effects,
)

from conftest import instances
from oracles import items_of, palm_probs


def test_attraction_witness(attraction):
    w = check_regularity_violation(attraction, {"a1", "b1"}, {"a1", "b1", "b2"}, "b1")
    assert w is not None and w.effect is Effect.REGULARITY_VIOLATION
    assert w.prob_before == pytest.approx(0.082, abs=1e-3)
    assert w.prob_after == pytest.approx(0.100, abs=1e-3)
    assert "b1" in w.describe(attraction)


def test_aggregate_bound_instance_has_no_violation_for_x21(aggregate_bound):
    # oracle: P(x21 | {x11, x21}) = 2/9 falls to 5/36 once x22 joins
    items = items_of(aggregate_bound)
    before = palm_probs(items, ["x11", "x21"], 1.0)[0]["x21"]
    after = palm_probs(items, ["x11", "x21", "x22"], 1.0)[0]["x21"]
    assert before > after
    assert check_regularity_violation(aggregate_bound, {"x11", "x21"}, {"x11", "x21", "x22"}, "x21") is None


def test_overload_witness(overload):
    w = check_choice_overload(overload, {"x11", "x21"}, {"x11", "x21", "x22"})
    assert w is not None and w.effect is Effect.CHOICE_OVERLOAD
    assert w.prob_before == pytest.approx(11 / 72, abs=1e-12)
    assert w.prob_after == pytest.approx(3 / 11, abs=1e-12)


def test_empty_smaller_set_never_overloads(overload):
    assert check_choice_overload(overload, set(), {"x11", "x22"}) is None


def test_containment_required(attraction):
    with pytest.raises(DomainError):
        check_choice_overload(attraction, {"b2"}, {"a1"})
    with pytest.raises(DomainError):
        check_regularity_violation(attraction, {"a1"}, {"a1", "b1"}, "b1")


def test_scan_finds_known_witnesses(attraction, overload):
    found = scan_for_effects(attraction, 3)
    assert any(
        w.effect is Effect.REGULARITY_VIOLATION
        and w.focal_product == "b1"
        and w.smaller_set == {"a1", "b1"}
        and w.larger_set == {"a1", "b1", "b2"}
        for w in found
    )
    found = scan_for_effects(overload, 3)
    assert any(
        w.effect is Effect.CHOICE_OVERLOAD and w.smaller_set == {"x11", "x21"} and w.larger_set == {"x11", "x21", "x22"}
        for w in found
    )


def test_scan_is_deterministic(attraction):
    assert scan_for_effects(attraction, 3) == scan_for_effects(attraction, 3)


def test_scan_cap():
    inst = Instance(tuple(Product(f"p{i}", 1, 1.0, 1.0) for i in range(5)), 1.0)
    with pytest.raises(ResourceLimitError):
        scan_for_effects(inst, 2, cap=4)


@settings(max_examples=40)
@given(instances(max_products=6, levels=(2,)))
def test_single_level_is_silent(inst):
    assert scan_for_effects(inst, len(inst)) == []


@settings(max_examples=40)
@given(instances(max_products=6))
def test_witnesses_reverify(inst):
    for w in scan_for_effects(inst, len(inst)):
        assert w.smaller_set < w.larger_set
        if w.effect is Effect.REGULARITY_VIOLATION:
            before = choice_probability(inst, w.smaller_set, w.focal_product)
            after = choice_probability(inst, w.larger_set, w.focal_product)
        else:
            before = no_choice_probability(inst, w.smaller_set)
            after = no_choice_probability(inst, w.larger_set)
        assert before < after - 1e-12
