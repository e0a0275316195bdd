"""Isomorphism of betweennesses viewed as ternary relational structures.

Two independent routes are provided: :func:`betweenness_isomorphic` is a
direct backtracking search for a bijection, and :func:`canonical_form` computes
a labelling-independent normal form by colour refinement plus
individualisation, with automorphism pruning.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .betweenness import Betweenness, lines_of

CANONICAL_MAX_N = 10


class SizeMismatch(ValueError):
    pass


class TooLarge(ValueError):
    pass


# -- invariants ----------------------------------------------------------------

def position_profiles(b: Betweenness) -> list[tuple[int, int, int]]:
    """Per point: how often it is the first, middle and last coordinate."""
    prof = [[0, 0, 0] for _ in range(b.n)]
    for t in b.triples:
        for pos, v in enumerate(t):
            prof[v][pos] += 1
    return [tuple(p) for p in prof]


def line_degrees(b: Betweenness) -> list[tuple[int, ...]]:
    """Per point: sorted sizes of the distinct lines through it."""
    out: list[list[int]] = [[] for _ in range(b.n)]
    for entry in lines_of(b).lines:
        for v in entry.members:
            out[v].append(len(entry.members))
    return [tuple(sorted(d)) for d in out]


def point_invariants(b: Betweenness) -> list[tuple]:
    return list(zip(position_profiles(b), line_degrees(b)))


# -- direct search -------------------------------------------------------------

def _consistent(a: frozenset, b: frozenset, phi: dict[int, int], v: int, done: list[int]) -> bool:
    fv = phi[v]
    for i, j in combinations(done, 2):
        fi, fj = phi[i], phi[j]
        for (p, q, r), (fp, fq, fr) in (
            ((v, i, j), (fv, fi, fj)), ((v, j, i), (fv, fj, fi)),
            ((i, v, j), (fi, fv, fj)), ((j, v, i), (fj, fv, fi)),
            ((i, j, v), (fi, fj, fv)), ((j, i, v), (fj, fi, fv)),
        ):
            if ((p, q, r) in a) != ((fp, fq, fr) in b):
                return False
    return True


def is_isomorphism(a: Betweenness, b: Betweenness, phi: Sequence[int]) -> bool:
    if a.n != b.n or sorted(phi) != list(range(a.n)):
        return False
    return len(a) == len(b) and all((phi[x], phi[y], phi[z]) in b.triples for x, y, z in a.triples)


def betweenness_isomorphic(a: Betweenness, b: Betweenness) -> tuple[int, ...] | None:
    """A bijection ``phi`` (as a tuple, ``phi[i]`` = image of ``i``) or ``None``."""
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} points vs {b.n} points")
    n = a.n
    if len(a) != len(b) or lines_of(a).sizes() != lines_of(b).sizes():
        return None
    inv_a, inv_b = point_invariants(a), point_invariants(b)
    if Counter(inv_a) != Counter(inv_b):
        return None
    order = sorted(range(n), key=lambda v: (inv_a[v], v))
    targets = {key: [w for w in range(n) if inv_b[w] == key] for key in set(inv_b)}
    phi: dict[int, int] = {}
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in targets[inv_a[v]]:
            if used[w]:
                continue
            phi[v] = w
            if _consistent(a.triples, b.triples, phi, v, order[:k]):
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
            del phi[v]
        return False

    if not extend(0):
        return None
    result = tuple(phi[i] for i in range(n))
    if not is_isomorphism(a, b, result):
        raise AssertionError("backtracking produced a non-isomorphism")
    return result


def brute_force_isomorphic(a: Betweenness, b: Betweenness) -> tuple[int, ...] | None:
    """Try every bijection. Only for small n; used as a test oracle."""
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} points vs {b.n} points")
    for perm in permutations(range(a.n)):
        if is_isomorphism(a, b, perm):
            return perm
    return None


# -- canonical form -----------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    n: int
    triples: tuple[tuple[int, int, int], ...]
    witness: tuple[int, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.n == other.n and self.triples == other.triples

    def __hash__(self):
        return hash((self.n, self.triples))

    @property
    def key(self) -> tuple:
        return (self.n, self.triples)

    def betweenness(self) -> Betweenness:
        return Betweenness(self.n, self.triples)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.triples]}


def _refine(n: int, incident: list[list[tuple[int, int, int, int]]], colors: list[int]) -> list[int]:
    """Iterated colour refinement; colours are ranks of invariant signatures."""
    ncls = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            around = sorted((pos, colors[p], colors[q]) for pos, p, q, _ in incident[v])
            sigs.append((colors[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncls:
            return colors
        ncls = len(ranks)


def _incidence(b: Betweenness) -> list[list[tuple[int, int, int, int]]]:
    inc: list[list[tuple[int, int, int, int]]] = [[] for _ in range(b.n)]
    for x, y, z in b.triples:
        inc[x].append((0, y, z, 0))
        inc[y].append((1, x, z, 0))
        inc[z].append((2, x, y, 0))
    return inc


def _individualize(colors: list[int], v: int) -> list[int]:
    return [2 * c + (0 if u == v else 1) if c == colors[v] else 2 * c + 1 for u, c in enumerate(colors)]


def _orbit_of(v: int, gens: list[tuple[int, ...]]) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for g in gens:
            w = g[u]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def canonical_form(b: Betweenness, max_n: int = CANONICAL_MAX_N) -> CanonicalForm:
    """Normal form: equal for two betweennesses iff they are isomorphic.

    Among the discrete colourings reachable by refine/individualise, the one
    whose relabelled sorted triple list is smallest is chosen. Colourings are
    built only from isomorphism-invariant data, so the choice commutes with
    relabelling.
    """
    if b.n > max_n:
        raise TooLarge(f"canonical form limited to n <= {max_n} (got {b.n})")
    n = b.n
    if n == 0:
        return CanonicalForm(0, (), ())
    inc = _incidence(b)
    triples = list(b.triples)
    best: list = [None, None]  # certificate, labelling
    leaves: dict[tuple, tuple[int, ...]] = {}
    automorphisms: list[tuple[int, ...]] = []

    def certificate(labels: list[int]) -> tuple:
        return tuple(sorted((labels[x], labels[y], labels[z]) for x, y, z in triples))

    def search(colors: list[int], fixed: tuple[int, ...]):
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            labels = colors
            cert = certificate(labels)
            if cert in leaves:
                other = leaves[cert]
                # point with label L in this leaf corresponds to the point with
                # label L in the other leaf
                pos = {lab: v for v, lab in enumerate(other)}
                gamma = tuple(pos[labels[v]] for v in range(n))
                if any(gamma[v] != v for v in range(n)):
                    automorphisms.append(gamma)
            else:
                leaves[cert] = tuple(labels)
                if best[0] is None or cert < best[0]:
                    best[0], best[1] = cert, tuple(labels)
            return
        explored: list[int] = []
        for v in target:
            stabiliser = [g for g in automorphisms if all(g[f] == f for f in fixed)]
            if any(v in _orbit_of(u, stabiliser) for u in explored):
                continue
            explored.append(v)
            search(_refine(n, inc, _individualize(colors, v)), fixed + (v,))

    search(_refine(n, inc, [0] * n), ())
    return CanonicalForm(n, best[0], best[1])


def census(bs: Iterable[Betweenness]) -> dict[CanonicalForm, int]:
    counts: dict[CanonicalForm, int] = {}
    size = None
    for b in bs:
        if size is None:
            size = b.n
        elif b.n != size:
            raise SizeMismatch(f"census mixes {size}-point and {b.n}-point betweennesses")
        cf = canonical_form(b)
        counts[cf] = counts.get(cf, 0) + 1
    return dict(sorted(counts.items(), key=lambda kv: kv[0].triples))
