import pytest
from hypothesis import strategies as st

from orb2d.signature import MANIFOLD, MIRROR, BoundaryCircle, Signature


@st.composite
def signatures(draw, max_genus=3, max_cones=4, max_order=9, max_boundary=3,
               max_corners=3, max_punctures=3):
    orientable = draw(st.booleans())
    genus = draw(st.integers(0 if orientable else 1, max_genus))
    punctures = draw(st.integers(0, max_punctures))
    cones = draw(st.lists(st.integers(2, max_order), max_size=max_cones))
    circles = draw(
        st.lists(
            st.one_of(
                st.just(BoundaryCircle(MANIFOLD)),
                st.builds(
                    BoundaryCircle,
                    st.just(MIRROR),
                    st.lists(st.integers(2, max_order), max_size=max_corners).map(tuple),
                ),
            ),
            max_size=max_boundary,
        )
    )
    return Signature.make(orientable, genus, punctures, circles, cones)


@pytest.fixture(scope="session")
def signature_strategy():
    return signatures()


# Capture manager handle so the acceptance gate can print its per-criterion
# pass/fail lines into the run log even without -s.
capture = {"manager": None}


def pytest_configure(config):
    capture["manager"] = config.pluginmanager.getplugin("capturemanager")
