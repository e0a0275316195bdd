from collections import Counter
from itertools import product

import pytest

from qlines.partitions import compositions3, end_swap_classes, p3, partitions, rotation_classes


def p3_by_brute_force(n):
    return sum(1 for a, b, c in product(range(1, n + 1), repeat=3) if a >= b >= c and a + b + c == n)


@pytest.mark.parametrize("n", range(0, 16))
def test_p3_matches_brute_force(n):
    assert p3(n) == p3_by_brute_force(n)


def test_p3_known_values():
    # nearest integer to n^2 / 12
    assert [p3(n) for n in range(3, 11)] == [1, 1, 2, 3, 4, 5, 7, 8]
    assert all(p3(n) == round(n * n / 12) for n in range(3, 40))


def test_partitions_are_non_increasing_and_distinct():
    ps = list(partitions(10, 4))
    assert len(ps) == len(set(ps))
    assert all(sum(p) == 10 and list(p) == sorted(p, reverse=True) for p in ps)


def test_compositions():
    assert list(compositions3(3)) == [(1, 1, 1)]
    assert len(list(compositions3(7))) == 15


@pytest.mark.parametrize("n", range(3, 12))
def test_symmetry_class_counts(n):
    comps = list(compositions3(n))
    rot = Counter(min((a, b, c), (b, c, a), (c, a, b)) for a, b, c in comps)
    swap = Counter(min((a, b, c), (c, b, a)) for a, b, c in comps)
    assert rotation_classes(n) == len(rot)
    assert end_swap_classes(n) == len(swap)
    # each orbit under all six permutations is a union of such classes
    assert rotation_classes(n) >= p3(n) and end_swap_classes(n) >= p3(n)
