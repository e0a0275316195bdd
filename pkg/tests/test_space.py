from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings

from conftest import FOUR_POINT_THREE_LINES, digraphs, triangle_ok
from oracles import path_distance, reachable_everywhere
from qlines.constructions import PartitionTriple, construct_C, construct_D1, partition_triples
from qlines.space import (
    AxiomViolation, NotStronglyConnected, QuasimetricSpace, WeightedDigraph, bidirected,
    format_fraction, is_strongly_connected, shortest_path_space, space_from_matrix, to_fraction,
)


def test_bidirected_path_is_path_metric():
    s = shortest_path_space(bidirected(3, [(0, 1, 1), (1, 2, 1)]))
    assert s.is_metric()
    assert s(0, 2) == 2


def test_C112_distance_between_block_heads():
    g = construct_C(PartitionTriple(1, 1, 2))
    s = shortest_path_space(g)
    x1, y1 = 0, 1
    assert s(x1, y1) == 2
    assert s(x1, y1) == path_distance(g, x1, y1)


def test_four_point_digraph_distances_match_path_oracle():
    s = shortest_path_space(FOUR_POINT_THREE_LINES)
    for u in range(4):
        for v in range(4):
            assert s(u, v) == path_distance(FOUR_POINT_THREE_LINES, u, v)


def test_single_arc_not_strongly_connected():
    g = WeightedDigraph(2, ((0, 1, 1),))
    assert not is_strongly_connected(g)
    with pytest.raises(NotStronglyConnected) as info:
        shortest_path_space(g)
    assert (info.value.u, info.value.v) == (1, 0)


def test_bidirected_edge_strongly_connected():
    assert is_strongly_connected(bidirected(2, [(0, 1, 1)]))


def test_D1_digraph_strongly_connected():
    g = construct_D1(PartitionTriple(1, 1, 1))
    assert is_strongly_connected(g) and reachable_everywhere(g)


def test_space_from_matrix_examples():
    s = space_from_matrix([[0, 1], [1, 0]])
    assert s.n == 2 and s(0, 1) == 1
    with pytest.raises(AxiomViolation) as info:
        space_from_matrix([[0, 0], [1, 0]])
    assert info.value.kind == "identity"
    with pytest.raises(AxiomViolation) as info:
        space_from_matrix([[0, 1, 3], [1, 0, 1], [1, 1, 0]])
    assert info.value.kind == "triangle" and info.value.witness == (0, 1, 2)


def test_ragged_matrix_rejected():
    with pytest.raises(AxiomViolation) as info:
        space_from_matrix([[0, 1], [1]])
    assert info.value.kind == "shape"


def test_digraph_validation():
    with pytest.raises(ValueError):
        WeightedDigraph(2, ((0, 0, 1),))
    with pytest.raises(ValueError):
        WeightedDigraph(2, ((0, 1, 1), (0, 1, 2)))
    with pytest.raises(ValueError):
        WeightedDigraph(2, ((0, 2, 1),))
    with pytest.raises(ValueError):
        WeightedDigraph(2, ((0, 1, 0),))
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_fraction_formatting_round_trip():
    assert format_fraction(Fraction(3)) == "3/1"
    assert format_fraction(Fraction(6, 4)) == "3/2"
    assert to_fraction("3/2") == Fraction(3, 2)


def test_digraph_json_and_dot():
    g = construct_C((2, 1, 1))
    assert WeightedDigraph.from_json(g.to_json()) == g
    dot = g.to_dot("C")
    assert dot.count("->") == len(g.arcs)


def test_tsv_round_trip():
    s = shortest_path_space(construct_D1((1, 2, 1)))
    assert QuasimetricSpace.from_tsv(s.to_tsv()) == s


def test_apsp_triangle_on_all_constructions_up_to_nine_points():
    for n in range(3, 10):
        for t in partition_triples(n):
            d = shortest_path_space(construct_C(t)).dist
            assert triangle_ok(d)
        for t in partition_triples(n - 1):
            d = shortest_path_space(construct_D1(t)).dist
            assert triangle_ok(d)


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=9))
def test_apsp_is_a_quasimetric(g):
    s = shortest_path_space(g)
    assert triangle_ok(s.dist)
    assert all(s(i, i) == 0 for i in range(s.n))
    assert all(s(i, j) > 0 for i in range(s.n) for j in range(s.n) if i != j)


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=7))
def test_apsp_idempotent(g):
    s = shortest_path_space(g)
    assert shortest_path_space(s.as_digraph()) == s


@settings(max_examples=100, deadline=None)
@given(digraphs(max_n=5))
def test_apsp_matches_simple_path_oracle(g):
    s = shortest_path_space(g)
    for u in range(g.n):
        for v in range(g.n):
            assert s(u, v) == path_distance(g, u, v)


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=6))
def test_denominators_divide_weight_lcm(g):
    halved = WeightedDigraph(g.n, tuple((a, b, w / (1 + (a + b) % 3)) for a, b, w in g.arcs))
    m = lcm(*(w.denominator for _, _, w in halved.arcs))
    s = shortest_path_space(halved)
    assert all(m % d.denominator == 0 for row in s.dist for d in row)
