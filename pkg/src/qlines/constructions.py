"""Digraphs whose shortest-path quasimetrics have exactly three or four lines,
together with closed-form descriptions of their betweennesses.

Point layout is fixed: the X block ``x_1..x_p``, then ``y_1..y_q``, then
``z_1..z_r`` and finally, for the four-line families, the apex ``u``.

The closed forms are plain set-builders over index ranges and never look at
distances, so comparing them with the APSP betweenness is a real cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .betweenness import Betweenness
from .space import WeightedDigraph


@dataclass(frozen=True)
class PartitionTriple:
    p: int
    q: int
    r: int

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def total(self) -> int:
        return self.p + self.q + self.r

    def blocks(self) -> tuple[list[int], list[int], list[int]]:
        p, q, r = self.p, self.q, self.r
        return list(range(p)), list(range(p, p + q)), list(range(p + q, p + q + r))

    def labels(self, apex: bool = False) -> tuple[str, ...]:
        names = [f"x{i}" for i in range(1, self.p + 1)]
        names += [f"y{i}" for i in range(1, self.q + 1)]
        names += [f"z{i}" for i in range(1, self.r + 1)]
        if apex:
            names.append("u")
        return tuple(names)


def _as_triple(t) -> PartitionTriple:
    if isinstance(t, PartitionTriple):
        return t
    return PartitionTriple(*t)


def _path_arcs(block: list[int]) -> list[tuple[int, int, Fraction]]:
    one = Fraction(1)
    arcs = []
    for a, b in zip(block, block[1:]):
        arcs.append((a, b, one))
        arcs.append((b, a, one))
    return arcs


# -- weight constants ---------------------------------------------------------

def c_weight_C(t) -> int:
    """Least integer above ``max(p+q, p+r, q+r) - 2``."""
    t = _as_triple(t)
    return max(t.p + t.q, t.p + t.r, t.q + t.r) - 1


def c_weight_D1(t) -> int:
    """Least integer with ``2c > p+q+r-3`` and ``c >= max(p, q, r)``.

    The second bound is needed: with only the first, long blocks get shortcuts
    through the apex and the line count breaks (e.g. p,q,r = 2,1,1 with c = 1).
    """
    t = _as_triple(t)
    return max((t.total - 3) // 2 + 1, t.p, t.q, t.r)


def c_weight_D2(t) -> int:
    """Heavy-arc weight for the second four-line family: ``p+q+r-1``.

    One more than ``p+q+r-2``; at ``p+q+r-2`` the apex lies between the outer
    blocks and the space gains extra lines.
    """
    return _as_triple(t).total - 1


# -- digraphs -----------------------------------------------------------------

def construct_C(t, c=None) -> WeightedDigraph:
    t = _as_triple(t)
    X, Y, Z = t.blocks()
    c = Fraction(c_weight_C(t) if c is None else c)
    heavy = [
        (X[0], Z[0]), (Z[0], Y[-1]), (Y[-1], X[0]),
        (X[-1], Y[0]), (Y[0], Z[-1]), (Z[-1], X[-1]),
    ]
    arcs = _path_arcs(X) + _path_arcs(Y) + _path_arcs(Z) + [(a, b, c) for a, b in heavy]
    return WeightedDigraph(t.total, tuple(arcs), labels=t.labels())


def construct_D1(t, c=None) -> WeightedDigraph:
    t = _as_triple(t)
    X, Y, Z = t.blocks()
    u = t.total
    c = Fraction(c_weight_D1(t) if c is None else c)
    arcs = _path_arcs(X) + _path_arcs(Y) + _path_arcs(Z)
    for V in (X, Y, Z):
        arcs += [(V[0], u, 2 * c), (u, V[-1], 2 * c)]
    arcs += [(X[-1], Y[0], c), (Y[-1], Z[0], c), (Z[-1], X[0], c)]
    return WeightedDigraph(u + 1, tuple(arcs), labels=t.labels(apex=True))


def construct_D2(t, c=None) -> WeightedDigraph:
    t = _as_triple(t)
    X, Y, Z = t.blocks()
    u = t.total
    p, q, r = t.p, t.q, t.r
    c = Fraction(c_weight_D2(t) if c is None else c)
    arcs = _path_arcs(X) + _path_arcs(Y) + _path_arcs(Z)
    arcs += [
        (X[0], u, c), (u, X[-1], c),
        (Y[0], u, c), (u, Y[-1], Fraction(p + r)),
        (Z[0], u, c), (u, Z[-1], c),
        (X[-1], Y[0], Fraction(p)),
        (Y[-1], Z[0], Fraction(q + r)),
        (Z[-1], Y[0], Fraction(r)),
        (Y[-1], X[0], Fraction(q + p)),
    ]
    return WeightedDigraph(u + 1, tuple(arcs), labels=t.labels(apex=True))


def construct(family: str, t, c=None) -> WeightedDigraph:
    builders = {"C": construct_C, "D1": construct_D1, "D2": construct_D2}
    if family not in builders:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(builders)}")
    return builders[family](t, c)


# -- closed-form betweennesses --------------------------------------------------
# Blocks are index lists in increasing order, so "v before v' in V" is v < v'.

def _monotone(V):
    return {(a, b, c) for a, b, c in product(V, repeat=3) if a < b < c or a > b > c}


def _pair_then(V, W, ascending: bool):
    """V^2 W: (v, v', w) with v before v' (ascending) or after it."""
    return {(a, b, w) for a, b in product(V, repeat=2) if (a < b if ascending else a > b) for w in W}


def _then_pair(W, V, ascending: bool):
    """W V^2: (w, v, v')."""
    return {(w, a, b) for a, b in product(V, repeat=2) if (a < b if ascending else a > b) for w in W}


def expected_betweenness_C(t) -> Betweenness:
    t = _as_triple(t)
    X, Y, Z = t.blocks()
    s = _monotone(X) | _monotone(Y) | _monotone(Z)
    s |= _pair_then(X, Y, True) | _then_pair(Y, X, True) | _pair_then(Y, X, True) | _then_pair(X, Y, True)
    s |= _pair_then(X, Z, False) | _then_pair(Z, X, False) | _pair_then(Z, X, True) | _then_pair(X, Z, True)
    s |= _pair_then(Y, Z, False) | _then_pair(Z, Y, False) | _pair_then(Z, Y, False) | _then_pair(Y, Z, False)
    return Betweenness(t.total, s)


def expected_betweenness_D(variant: int, t) -> Betweenness:
    t = _as_triple(t)
    if variant not in (1, 2):
        raise ValueError(f"variant must be 1 or 2, got {variant!r}")
    X, Y, Z = t.blocks()
    u = [t.total]
    blocks = (X, Y, Z)
    s = _monotone(X) | _monotone(Y) | _monotone(Z)
    cyclic = [(X, Y, Z), (Y, Z, X), (Z, X, Y)] if variant == 1 else [(X, Y, Z), (Z, Y, X)]
    for A, B, C in cyclic:
        s |= set(product(A, B, C))
    for V in blocks:
        for W in blocks:
            if W is not V:
                s |= _pair_then(V, W, True) | _then_pair(W, V, True)
        s |= _then_pair(u, V, False) | _pair_then(V, u, False)
    return Betweenness(t.total + 1, s)


def expected_betweenness(family: str, t) -> Betweenness:
    if family == "C":
        return expected_betweenness_C(t)
    if family in ("D1", "D2"):
        return expected_betweenness_D(int(family[1]), t)
    raise ValueError(f"unknown family {family!r}")


def partition_triples(total: int):
    """Ordered (p, q, r) of positive integers summing to ``total``."""
    for p in range(1, total - 1):
        for q in range(1, total - p):
            yield PartitionTriple(p, q, total - p - q)
