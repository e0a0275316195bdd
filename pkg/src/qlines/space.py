"""Weighted digraphs with exact rational weights and the quasimetric spaces they induce."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class NotStronglyConnected(ValueError):
    def __init__(self, u: int, v: int):
        super().__init__(f"no directed path from {u} to {v}")
        self.u = u
        self.v = v


class AxiomViolation(ValueError):
    """A distance table breaks identity, positivity or the triangle inequality.

    ``kind`` is one of ``"shape"``, ``"identity"``, ``"triangle"``;
    ``witness`` is the offending pair or triple of point indices.
    """

    def __init__(self, kind: str, witness: tuple, message: str = ""):
        super().__init__(message or f"{kind} axiom violated at {witness}")
        self.kind = kind
        self.witness = witness


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"num/den"`` strings. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a weight")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class WeightedDigraph:
    n: int
    arcs: tuple[tuple[int, int, Fraction], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        seen = set()
        clean = []
        for tail, head, w in self.arcs:
            w = to_fraction(w)
            if not (0 <= tail < self.n and 0 <= head < self.n):
                raise ValueError(f"arc ({tail}, {head}) out of range for n={self.n}")
            if tail == head:
                raise ValueError(f"self-loop at {tail}")
            if (tail, head) in seen:
                raise ValueError(f"duplicate arc ({tail}, {head})")
            if w <= 0:
                raise ValueError(f"arc ({tail}, {head}) has non-positive weight {w}")
            seen.add((tail, head))
            clean.append((tail, head, w))
        object.__setattr__(self, "arcs", tuple(sorted(clean)))
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have one entry per point")

    def successors(self) -> list[list[tuple[int, Fraction]]]:
        out: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for tail, head, w in self.arcs:
            out[tail].append((head, w))
        return out

    def weight(self, tail: int, head: int) -> Fraction | None:
        for t, h, w in self.arcs:
            if (t, h) == (tail, head):
                return w
        return None

    # -- serialization ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "arcs": [[t, h, format_fraction(w)] for t, h, w in self.arcs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "WeightedDigraph":
        if not isinstance(obj, dict) or "n" not in obj or "arcs" not in obj:
            raise ValueError('digraph JSON needs keys "n" and "arcs"')
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"bad point count {n!r}")
        if not isinstance(obj["arcs"], list):
            raise ValueError('"arcs" must be a list')
        arcs = []
        for i, arc in enumerate(obj["arcs"]):
            if not isinstance(arc, list) or len(arc) != 3:
                raise ValueError(f"arc #{i} must be [tail, head, weight]")
            t, h, w = arc
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (t, h)):
                raise ValueError(f"arc #{i} endpoints must be integers")
            arcs.append((t, h, to_fraction(w)))
        return cls(n, tuple(arcs))

    @classmethod
    def from_json(cls, text: str) -> "WeightedDigraph":
        return cls.from_json_obj(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        names = self.labels or tuple(str(i) for i in range(self.n))
        lines = [f"digraph {name} {{"]
        for i in range(self.n):
            lines.append(f'  {i} [label="{names[i]}"];')
        for t, h, w in self.arcs:
            lines.append(f'  {t} -> {h} [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def bidirected(n: int, edges: Iterable[tuple[int, int, object]], **kw) -> WeightedDigraph:
    """Digraph with both orientations of every listed edge at the same weight."""
    arcs = []
    for a, b, w in edges:
        arcs.append((a, b, to_fraction(w)))
        arcs.append((b, a, to_fraction(w)))
    return WeightedDigraph(n, tuple(arcs), **kw)


def _reachable(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _unreachable_pair(g: WeightedDigraph) -> tuple[int, int] | None:
    fwd: list[list[int]] = [[] for _ in range(g.n)]
    rev: list[list[int]] = [[] for _ in range(g.n)]
    for t, h, _ in g.arcs:
        fwd[t].append(h)
        rev[h].append(t)
    # strongly connected iff 0 reaches everyone and everyone reaches 0
    out = _reachable(fwd, 0)
    for v in range(g.n):
        if v not in out:
            return (0, v)
    back = _reachable(rev, 0)
    for v in range(g.n):
        if v not in back:
            return (v, 0)
    return None


def is_strongly_connected(g: WeightedDigraph) -> bool:
    return _unreachable_pair(g) is None


@dataclass(frozen=True)
class QuasimetricSpace:
    """Exact distance table on points ``0..n-1``; not necessarily symmetric.

    Build through :func:`space_from_matrix` or :func:`shortest_path_space`,
    both of which check the axioms.
    """

    n: int
    dist: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    def is_metric(self) -> bool:
        return all(self.dist[i][j] == self.dist[j][i] for i in range(self.n) for j in range(i))

    def scaled(self, factor) -> "QuasimetricSpace":
        f = to_fraction(factor)
        if f <= 0:
            raise ValueError("scale factor must be positive")
        return QuasimetricSpace(self.n, tuple(tuple(d * f for d in row) for row in self.dist))

    def relabel(self, perm: Sequence[int]) -> "QuasimetricSpace":
        """Point ``i`` becomes point ``perm[i]``."""
        d = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                d[perm[i]][perm[j]] = self.dist[i][j]
        return QuasimetricSpace(self.n, tuple(map(tuple, d)))

    def as_digraph(self) -> WeightedDigraph:
        """Complete digraph whose arc weights are the distances."""
        arcs = tuple(
            (i, j, self.dist[i][j]) for i in range(self.n) for j in range(self.n) if i != j
        )
        return WeightedDigraph(self.n, arcs)

    def to_tsv(self) -> str:
        return "".join(
            "\t".join(format_fraction(d) for d in row) + "\n" for row in self.dist
        )

    @classmethod
    def from_tsv(cls, text: str) -> "QuasimetricSpace":
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rows.append([Fraction(tok) for tok in line.split()])
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return space_from_matrix(rows)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "dist": [[format_fraction(d) for d in row] for row in self.dist]}


def check_axioms(m: Sequence[Sequence[Fraction]]) -> None:
    n = len(m)
    for i, row in enumerate(m):
        if len(row) != n:
            raise AxiomViolation("shape", (i,), f"row {i} has {len(row)} entries, expected {n}")
    for i in range(n):
        if m[i][i] != 0:
            raise AxiomViolation("identity", (i, i))
        for j in range(n):
            if i != j and m[i][j] <= 0:
                raise AxiomViolation("identity", (i, j))
    for i in range(n):
        mi = m[i]
        for j in range(n):
            mij = mi[j]
            mj = m[j]
            for k in range(n):
                if mi[k] > mij + mj[k]:
                    raise AxiomViolation(
                        "triangle", (i, j, k),
                        f"dist[{i}][{k}] = {mi[k]} > {mij} + {mj[k]}",
                    )


def space_from_matrix(m: Sequence[Sequence[object]], labels=None) -> QuasimetricSpace:
    rows = tuple(tuple(to_fraction(v) for v in row) for row in m)
    check_axioms(rows)
    return QuasimetricSpace(len(rows), rows, labels)


def shortest_path_space(g: WeightedDigraph) -> QuasimetricSpace:
    """All-pairs shortest path distances (Floyd-Warshall, exact)."""
    bad = _unreachable_pair(g)
    if bad is not None:
        raise NotStronglyConnected(*bad)
    n = g.n
    d: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = Fraction(0)
    for t, h, w in g.arcs:
        d[t][h] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                s = dik + dkj
                if di[j] is None or s < di[j]:
                    di[j] = s
    return space_from_matrix(d, labels=g.labels)
