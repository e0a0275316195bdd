from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import strategies as st

from qlines.betweenness import Betweenness
from qlines.space import WeightedDigraph, shortest_path_space

# Asymmetric 4-point digraph found by random search; its space has three
# lines, none universal. Deliberately unrelated to the C construction layout.
FOUR_POINT_THREE_LINES = WeightedDigraph(4, (
    (0, 1, 4), (0, 2, 3), (1, 0, 1), (1, 3, 2),
    (2, 1, 3), (2, 3, 4), (3, 0, 2), (3, 2, 4),
))


@pytest.fixture
def four_point_three_lines():
    return FOUR_POINT_THREE_LINES


def triangle_ok(m):
    n = len(m)
    return all(m[i][k] <= m[i][j] + m[j][k] for i in range(n) for j in range(n) for k in range(n))


@st.composite
def digraphs(draw, min_n=2, max_n=6, max_weight=4, symmetric=False):
    """Strongly connected digraphs: a directed Hamiltonian cycle plus extra arcs.

    Small integer weights make ties, hence non-trivial betweennesses, common.
    """
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    w = st.integers(1, max_weight)
    arcs = {}
    for a, b in zip(order, order[1:] + order[:1]):
        if a != b:
            arcs[(a, b)] = draw(w)
    for a, b in permutations(range(n), 2):
        if (a, b) not in arcs and draw(st.booleans()):
            arcs[(a, b)] = draw(w)
    if symmetric:
        for (a, b), x in list(arcs.items()):
            arcs[(b, a)] = min(x, arcs.get((b, a), x))
    return WeightedDigraph(n, tuple((a, b, Fraction(x)) for (a, b), x in arcs.items()))


@st.composite
def spaces(draw, min_n=2, max_n=6, symmetric=False):
    return shortest_path_space(draw(digraphs(min_n, max_n, symmetric=symmetric)))


@st.composite
def relations(draw, min_n=3, max_n=6, density=0.3):
    """Arbitrary triple sets, valid or not."""
    n = draw(st.integers(min_n, max_n))
    every = list(permutations(range(n), 3))
    keep = draw(st.lists(st.booleans(), min_size=len(every), max_size=len(every)))
    return Betweenness(n, [t for t, k in zip(every, keep) if k])


@st.composite
def sparse_relations(draw, min_n=3, max_n=6):
    n = draw(st.integers(min_n, max_n))
    every = list(permutations(range(n), 3))
    chosen = draw(st.sets(st.sampled_from(every), max_size=min(len(every), 3 * n)))
    return Betweenness(n, chosen)
