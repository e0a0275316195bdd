"""Betweenness relations, segments, lines and geodesics.

A :class:`Betweenness` is an abstract set of ordered triples; it need not come
from any space. Validators run on demand so partial or broken relations can be
held and inspected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .space import QuasimetricSpace

Triple = tuple[int, int, int]

DEFAULT_GEODESIC_CAP = 12


class SamePoint(ValueError):
    pass


class DuplicatePoint(ValueError):
    pass


class CapExceeded(ValueError):
    pass


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


@dataclass(frozen=True)
class Betweenness:
    n: int
    triples: frozenset[Triple]

    def __init__(self, n: int, triples: Iterable[Sequence[int]] = ()):
        clean = set()
        for t in triples:
            x, y, z = (int(v) for v in t)
            if len({x, y, z}) != 3:
                raise ValueError(f"triple {t} has repeated points")
            if not all(0 <= v < n for v in (x, y, z)):
                raise ValueError(f"triple {t} out of range for n={n}")
            clean.add((x, y, z))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "triples", frozenset(clean))

    def __contains__(self, t) -> bool:
        return tuple(t) in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.sorted_triples())

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)

    def relabel(self, perm: Sequence[int]) -> "Betweenness":
        """Image under the point map ``i -> perm[i]``."""
        return Betweenness(self.n, ((perm[x], perm[y], perm[z]) for x, y, z in self.triples))

    def restrict(self, points: Iterable[int]) -> "Betweenness":
        """Triples inside ``points``, relabelled to ``0..k-1`` in increasing order."""
        pts = sorted(set(points))
        index = {p: i for i, p in enumerate(pts)}
        return Betweenness(
            len(pts),
            ((index[x], index[y], index[z]) for x, y, z in self.triples
             if x in index and y in index and z in index),
        )

    def to_json_obj(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.sorted_triples()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Betweenness":
        if not isinstance(obj, dict) or "n" not in obj or "triples" not in obj:
            raise ValueError('betweenness JSON needs keys "n" and "triples"')
        n = obj["n"]
        if not _is_int(n) or n < 0:
            raise ValueError(f"bad point count {n!r}")
        if not isinstance(obj["triples"], list):
            raise ValueError('"triples" must be a list')
        triples = []
        for i, t in enumerate(obj["triples"]):
            if not isinstance(t, list) or len(t) != 3 or not all(_is_int(v) for v in t):
                raise ValueError(f"triple #{i} must be a list of three integers")
            triples.append(t)
        return cls(n, triples)

    @classmethod
    def from_json(cls, text: str) -> "Betweenness":
        return cls.from_json_obj(json.loads(text))


def betweenness_of(s: QuasimetricSpace) -> Betweenness:
    d = s.dist
    return Betweenness(
        s.n,
        ((x, y, z) for x, y, z in permutations(range(s.n), 3) if d[x][y] + d[y][z] == d[x][z]),
    )


def segment(s: QuasimetricSpace, x: int, y: int) -> frozenset[int]:
    if x == y:
        raise SamePoint(x)
    d = s.dist
    return frozenset(z for z in range(s.n) if d[x][y] == d[x][z] + d[z][y])


# -- rho-side line, used to cross-check the betweenness-side one ----------

def line_from_space(s: QuasimetricSpace, x: int, y: int) -> frozenset[int]:
    if x == y:
        raise SamePoint(x)
    d = s.dist
    return frozenset(
        z for z in range(s.n)
        if d[z][y] == d[z][x] + d[x][y]      # x in [zy]
        or d[x][y] == d[x][z] + d[z][y]      # z in [xy]
        or d[x][z] == d[x][y] + d[y][z]      # y in [xz]
    )


@dataclass(frozen=True)
class Line:
    x: int
    y: int
    members: frozenset[int]


@dataclass(frozen=True)
class LineEntry:
    members: frozenset[int]
    defining_pairs: tuple[tuple[int, int], ...]
    universal: bool


@dataclass(frozen=True)
class LineSet:
    n: int
    lines: tuple[LineEntry, ...]

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def universal_flags(self) -> tuple[bool, ...]:
        return tuple(e.universal for e in self.lines)

    def sizes(self) -> list[int]:
        return sorted(len(e.members) for e in self.lines)

    def member_sets(self) -> set[frozenset[int]]:
        return {e.members for e in self.lines}

    def line_of_pair(self, x: int, y: int) -> frozenset[int]:
        for e in self.lines:
            if (x, y) in e.defining_pairs:
                return e.members
        raise KeyError((x, y))

    def to_json_obj(self) -> list:
        return [
            {
                "members": sorted(e.members),
                "universal": e.universal,
                "defining_pairs": [list(p) for p in e.defining_pairs],
            }
            for e in self.lines
        ]


def _line_members(triples: frozenset, n: int, x: int, y: int) -> frozenset[int]:
    return frozenset(
        [x, y] + [z for z in range(n) if z != x and z != y and (
            (z, x, y) in triples or (x, z, y) in triples or (x, y, z) in triples)]
    )


def line_of(b: Betweenness, x: int, y: int) -> Line:
    if x == y:
        raise SamePoint(x)
    return Line(x, y, _line_members(b.triples, b.n, x, y))


def lines_of(b: Betweenness) -> LineSet:
    by_members: dict[frozenset[int], list[tuple[int, int]]] = {}
    for x, y in permutations(range(b.n), 2):
        by_members.setdefault(_line_members(b.triples, b.n, x, y), []).append((x, y))
    everything = frozenset(range(b.n))
    entries = sorted(
        (LineEntry(m, tuple(pairs), m == everything) for m, pairs in by_members.items()),
        key=lambda e: (-len(e.members), sorted(e.members)),
    )
    return LineSet(b.n, tuple(entries))


def has_universal_line(b: Betweenness) -> bool:
    return any(e.universal for e in lines_of(b).lines)


def symmetric_pairs(b: Betweenness) -> set[frozenset[int]]:
    return {
        frozenset((x, y)) for x, y in combinations(range(b.n), 2)
        if _line_members(b.triples, b.n, x, y) == _line_members(b.triples, b.n, y, x)
    }


def collinear(b: Betweenness, x: int, y: int, z: int) -> bool:
    return any(t in b.triples for t in permutations((x, y, z)))


# -- geodesics ---------------------------------------------------------------

def is_geodesic(b: Betweenness, seq: Sequence[int]) -> bool:
    if len(set(seq)) != len(seq):
        raise DuplicatePoint(list(seq))
    t = b.triples
    return all((seq[i], seq[j], seq[k]) in t for i, j, k in combinations(range(len(seq)), 3))


def _extendable(t: frozenset, n: int, seq: tuple[int, ...]) -> bool:
    """Whether some point can be prefixed, appended or inserted into ``seq``."""
    m = len(seq)
    inside = set(seq)
    for w in range(n):
        if w in inside:
            continue
        # position i: w goes right before seq[i] (i == m means append)
        for i in range(m + 1):
            ok = True
            for a, b_ in combinations(range(m), 2):
                if b_ < i:
                    need = (seq[a], seq[b_], w)
                elif a < i:
                    need = (seq[a], w, seq[b_])
                else:
                    need = (w, seq[a], seq[b_])
                if need not in t:
                    ok = False
                    break
            if ok:
                return True
    return False


def maximal_geodesics(b: Betweenness, cap: int = DEFAULT_GEODESIC_CAP) -> set[tuple[int, ...]]:
    """Maximal geodesics of length at least 2, found by depth-first extension."""
    if b.n > cap:
        raise CapExceeded(f"maximal geodesic search capped at n <= {cap} (got {b.n})")
    n = b.n
    t = b.triples
    # after[x][y]: bitmask of z with (x, y, z) in b
    after = [[0] * n for _ in range(n)]
    for x, y, z in t:
        after[x][y] |= 1 << z
    found: set[tuple[int, ...]] = set()

    def grow(seq: tuple[int, ...], cand: int):
        # cand: points w such that seq + (w,) is again a geodesic
        if not _extendable(t, n, seq):
            found.add(seq)
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            nxt = seq + (w,)
            mask = 0
            if len(nxt) < n:
                mask = after[seq[0]][w]
                for s in seq[1:]:
                    mask &= after[s][w]
                mask &= _append_mask(seq, after)
            grow(nxt, mask)

    for x, y in permutations(range(n), 2):
        grow((x, y), after[x][y])
    return found


def _append_mask(seq: tuple[int, ...], after: list[list[int]]) -> int:
    mask = -1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            mask &= after[seq[i]][seq[j]]
    return mask


# -- validators --------------------------------------------------------------

def property_one_violations(b: Betweenness) -> list[tuple[Triple, Triple]]:
    """Pairs (present triple, forbidden companion that is also present)."""
    out = []
    for x, y, z in b.sorted_triples():
        for other in ((y, x, z), (x, z, y)):
            if other in b.triples:
                out.append(((x, y, z), other))
    return out


def property_two_violations(b: Betweenness) -> list[tuple[tuple[int, int, int, int], str]]:
    """Ordered 4-tuples (w, x, y, z) where one side of the closure equivalence
    holds and the other does not; the tag says which side was present."""
    t = b.triples
    out = []
    for w, x, y, z in permutations(range(b.n), 4):
        left = (w, x, y) in t and (w, y, z) in t
        right = (w, x, z) in t and (x, y, z) in t
        if left != right:
            out.append(((w, x, y, z), "left" if left else "right"))
    return out


# (antecedent, consequent) patterns over the named points w, x, y, z
_FOUR_POINT_RULES = (
    (("wxy", "ywz", "zyx", "xzw"), ("wzy", "yxz", "zwx", "xyw")),
    (("wxy", "yzx", "xwz", "zyw"), ("wzy", "ywx", "xyz", "zxw")),
    (("wxy", "yzw", "xwz", "zyx"), ("wzy", "yxw", "xyz", "zwx")),
)


def validate_four_point_implications(b: Betweenness) -> list[dict]:
    t = b.triples
    out = []
    for quad in permutations(range(b.n), 4):
        name = dict(zip("wxyz", quad))

        def tr(word: str) -> Triple:
            return (name[word[0]], name[word[1]], name[word[2]])

        for rule, (ante, cons) in enumerate(_FOUR_POINT_RULES):
            if all(tr(a) in t for a in ante):
                missing = [tr(c) for c in cons if tr(c) not in t]
                if missing:
                    out.append({"rule": rule, "points": quad, "missing": missing})
    return out


def is_valid(b: Betweenness) -> bool:
    return not property_one_violations(b) and not property_two_violations(b)
