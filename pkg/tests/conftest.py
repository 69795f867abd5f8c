import hypothesis.strategies as st
import pytest
from hypothesis import settings

from tlcasimir import Capacitor, Inductor, LineSpec, Open, Parallel, Resistor, Series, Short

settings.register_profile("default", deadline=None, max_examples=120)
settings.load_profile("default")


def _series(children):
    return Series(tuple(children))


def _parallel(children):
    return Parallel(tuple(children))


leaf_elements = st.one_of(
    st.builds(Resistor, st.floats(min_value=0.0, max_value=1e4)),
    st.builds(Inductor, st.floats(min_value=0.0, max_value=1e-3)),
    st.builds(Capacitor, st.floats(min_value=1e-15, max_value=1e-3)),
    st.just(Short()),
    st.just(Open()),
)

impedance_trees = st.recursive(
    leaf_elements,
    lambda inner: st.one_of(
        st.builds(_series, st.lists(inner, min_size=2, max_size=4)),
        st.builds(_parallel, st.lists(inner, min_size=2, max_size=4)),
    ),
    max_leaves=12,
)

positive_xi = st.floats(min_value=1e3, max_value=1e12)
real_omegas = st.floats(min_value=1e3, max_value=1e12)


@pytest.fixture
def line():
    return LineSpec(z0=50.0, c=2.998e8)
