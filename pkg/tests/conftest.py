import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from acfg.game import CoalitionStructure, FriendGraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return FriendGraph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def structures(draw, n):
    labels, top = [], -1
    for _ in range(n):
        lab = draw(st.integers(0, top + 1))
        labels.append(lab)
        top = max(top, lab)
    return CoalitionStructure.from_rgs(labels)


@st.composite
def games(draw, min_n=1, max_n=6):
    g = draw(graphs(min_n, max_n))
    return g, draw(structures(g.n))


def as_oracle(gamma):
    return tuple(frozenset(b) for b in gamma)


def oracle_edges(g):
    return {frozenset(e) for e in g.edges()}
