from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fourier_motzkin_feasible
from qlines.simplex import EQ, GE, LE, LinearSystem, SimplexStats, find_feasible_point


def test_trivial_feasible():
    s = LinearSystem(2)
    s.add({0: 1, 1: 1}, GE, 3)
    s.add({0: 1}, LE, 1)
    x = find_feasible_point(s)
    assert x is not None and s.satisfied_by(x)


def test_trivial_infeasible():
    s = LinearSystem(1)
    s.add({0: 1}, EQ, -1)
    assert find_feasible_point(s) is None
    s = LinearSystem(2)
    s.add({0: 1, 1: 1}, LE, 1)
    s.add({0: 1, 1: 1}, GE, 2)
    assert find_feasible_point(s) is None


def test_exact_fractional_vertex():
    s = LinearSystem(2)
    s.add({0: 3, 1: 1}, EQ, 1)
    s.add({0: 1, 1: -1}, EQ, 0)
    assert find_feasible_point(s) == [Fraction(1, 4), Fraction(1, 4)]


def test_empty_system_and_stats():
    stats = SimplexStats()
    assert find_feasible_point(LinearSystem(3), stats) == [0, 0, 0]
    s = LinearSystem(2)
    s.add({0: 1, 1: 2}, EQ, 4)
    find_feasible_point(s, stats)
    assert stats.pivots >= 1


def test_bad_rows_rejected():
    s = LinearSystem(2)
    with pytest.raises(ValueError):
        s.add({0: 1}, "<", 1)
    with pytest.raises(IndexError):
        s.add({2: 1}, LE, 1)


def test_degenerate_cycle_prone_system_terminates():
    # Beale's classical cycling example, rewritten as a feasibility question
    s = LinearSystem(4)
    s.add({0: Fraction(1, 4), 1: -60, 2: Fraction(-1, 25), 3: 9}, LE, 0)
    s.add({0: Fraction(1, 2), 1: -90, 2: Fraction(-1, 50), 3: 3}, LE, 0)
    s.add({2: 1}, LE, 1)
    s.add({0: Fraction(3, 4), 1: -150, 2: Fraction(1, 50), 3: -6}, GE, Fraction(1, 20))
    x = find_feasible_point(s)
    assert x is not None and s.satisfied_by(x)


@st.composite
def small_systems(draw):
    nv = draw(st.integers(1, 3))
    system = LinearSystem(nv)
    coef = st.integers(-3, 3)
    for _ in range(draw(st.integers(1, 5))):
        coeffs = {j: draw(coef) for j in range(nv)}
        system.add(coeffs, draw(st.sampled_from([LE, GE, EQ])), draw(st.integers(-4, 4)))
    return system


@settings(max_examples=500, deadline=None)
@given(small_systems())
def test_agrees_with_fourier_motzkin(system):
    x = find_feasible_point(system)
    assert (x is not None) == fourier_motzkin_feasible(system.nvars, system.rows)
    if x is not None:
        assert system.satisfied_by(x)
