"""Decide whether an abstract betweenness is the betweenness of some
quasimetric (or metric) space, by exact LP feasibility.

Unknowns are the distances ``rho(x, y)`` for ordered pairs ``x != y``. Every
triple in ``b`` must be tight (``rho(x,y) + rho(y,z) - rho(x,z) == 0``) and
every other ordered triple strictly slack. All constraints are positively
homogeneous, so strict inequalities can be normalised to ``>= 1`` (and
``rho >= 1`` for positivity) without losing solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .betweenness import Betweenness, betweenness_of, property_one_violations
from .simplex import EQ, GE, LinearSystem, SimplexStats, find_feasible_point
from .space import QuasimetricSpace, space_from_matrix

MODES = ("quasimetric", "metric")


class PropertyViolation(ValueError):
    def __init__(self, violations):
        super().__init__(f"betweenness breaks the exclusion property: {violations[:3]}")
        self.violations = violations


class SizeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RealizabilityProblem:
    b: Betweenness
    mode: str = "quasimetric"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        bad = property_one_violations(self.b)
        if bad:
            raise PropertyViolation(bad)


@dataclass(frozen=True)
class RealizabilityCertificate:
    verdict: str  # "realizable" | "infeasible"
    witness: QuasimetricSpace | None = None
    pivots: int = 0

    @property
    def realizable(self) -> bool:
        return self.verdict == "realizable"

    def to_json_obj(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness.to_json_obj()
        return out


def _variables(n: int, metric: bool) -> dict[tuple[int, int], int]:
    index: dict[tuple[int, int], int] = {}
    count = 0
    for x, y in permutations(range(n), 2):
        if metric and (y, x) in index:
            index[(x, y)] = index[(y, x)]
        else:
            index[(x, y)] = count
            count += 1
    return index


def build_system(b: Betweenness, mode: str = "quasimetric") -> tuple[LinearSystem, dict]:
    """LP over slack variables ``s = rho - 1 >= 0``.

    With ``rho = 1 + s`` the tight constraint becomes ``s_xy + s_yz - s_xz = -1``
    and the slack one ``s_xy + s_yz - s_xz >= 0``.
    """
    index = _variables(b.n, mode == "metric")
    nv = len(set(index.values()))
    system = LinearSystem(nv)
    for x, y, z in permutations(range(b.n), 3):
        coeffs: dict[int, int] = {}
        for pair, sign in (((x, y), 1), ((y, z), 1), ((x, z), -1)):
            j = index[pair]
            coeffs[j] = coeffs.get(j, 0) + sign
        if (x, y, z) in b.triples:
            system.add(coeffs, EQ, -1)
        else:
            system.add(coeffs, GE, 0)
    return system, index


def _integer_matrix(n: int, rho: dict[tuple[int, int], Fraction]) -> list[list[Fraction]]:
    den = 1
    for v in rho.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    m = [[Fraction(0)] * n for _ in range(n)]
    for (x, y), v in rho.items():
        m[x][y] = v * den
    return m


def realize(prob: RealizabilityProblem) -> RealizabilityCertificate:
    b = prob.b
    if b.n < 2:
        return RealizabilityCertificate("realizable", space_from_matrix([[0]] * b.n))
    system, index = build_system(b, prob.mode)
    stats = SimplexStats()
    x = find_feasible_point(system, stats)
    if x is None:
        return RealizabilityCertificate("infeasible", None, stats.pivots)
    rho = {pair: 1 + x[j] for pair, j in index.items()}
    witness = space_from_matrix(_integer_matrix(b.n, rho))
    if betweenness_of(witness) != b:
        raise AssertionError("LP solution does not reproduce the betweenness")
    return RealizabilityCertificate("realizable", witness, stats.pivots)


def is_realizable(b: Betweenness, mode: str = "quasimetric") -> bool:
    return realize(RealizabilityProblem(b, mode)).realizable


def verify_witness(b: Betweenness, s: QuasimetricSpace) -> bool:
    if b.n != s.n:
        raise SizeMismatch(f"betweenness has {b.n} points, space has {s.n}")
    return betweenness_of(s) == b
