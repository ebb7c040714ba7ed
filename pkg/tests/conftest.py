import pytest
from hypothesis import strategies as st

from smlassort import Instance, Product, load_dataset

U0_CHOICES = (0.0, 1.0, 2.5, 5.0, 10.0)


@pytest.fixture
def attraction():
    return load_dataset("attraction")


@pytest.fixture
def overload():
    return load_dataset("choice_overload")


@pytest.fixture
def aggregate_bound():
    return load_dataset("aggregate_bound")


@pytest.fixture
def excluded_high():
    return load_dataset("excluded_high_revenue")


@pytest.fixture
def ro_suboptimal():
    return load_dataset("ro_suboptimal")


@pytest.fixture
def three_level():
    products = (Product("p1", 1, 1.0, 1.0), Product("p2", 2, 1.0, 1.0), Product("p3", 3, 1.0, 1.0))
    return Instance(products, 1.0)


revenues = st.floats(min_value=0.0, max_value=10.0, allow_nan=False)
utilities = st.floats(min_value=0.01, max_value=10.0, allow_nan=False)


@st.composite
def instances(draw, max_products=8, levels=(1, 2), u0=st.sampled_from(U0_CHOICES)):
    n = draw(st.integers(min_value=0, max_value=max_products))
    products = tuple(
        Product(f"p{i}", draw(st.sampled_from(levels)), draw(revenues), draw(utilities)) for i in range(n)
    )
    return Instance(products, draw(u0))


@st.composite
def instance_and_subset(draw, **kwargs):
    inst = draw(instances(**kwargs))
    ids = sorted(inst.ids)
    subset = frozenset(pid for pid in ids if draw(st.booleans()))
    return inst, subset


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
