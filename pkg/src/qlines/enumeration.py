"""Exhaustive search for realizable betweennesses with a prescribed number of
lines.

The search decides every ordered triple in or out, in a fixed order (three-point
subsets in lexicographic order, the six orderings of each subset in
lexicographic order). Between decisions it

* unit-propagates the exclusion property (``xyz`` forbids ``yxz`` and ``xzy``)
  and the four-point closure property, written as clauses;
* rejects any completed three- or four-point sub-relation that is not
  realizable on its own (realizability is hereditary: restricting a witness
  to a subset realizes the restriction);
* rejects partial assignments once the lines already fixed exceed the target
  or include a universal line;
* keeps only assignments that can still be the lexicographic maximum of their
  relabelling orbit (orderly generation), so each isomorphism class is
  reached once.

Complete candidates are then filtered by the exact LP.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .betweenness import Betweenness, betweenness_of, lines_of
from .constructions import construct, partition_triples
from .isomorphism import CanonicalForm, canonical_form
from .realizability import MODES, RealizabilityProblem, realize
from .space import QuasimetricSpace, shortest_path_space


class BudgetExhausted(RuntimeError):
    def __init__(self, report: "SearchReport"):
        super().__init__(f"time budget exhausted after {report.explored} nodes")
        self.report = report


@dataclass(frozen=True)
class SearchConfig:
    n: int
    target_lines: int | None = None
    forbid_universal: bool = True
    mode: str = "quasimetric"
    time_budget: float | None = None
    canonical_only: bool = True

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.forbid_universal and self.target_lines is not None and self.target_lines < 3:
            raise ValueError("without a universal line there are at least 3 lines")


@dataclass
class SearchReport:
    config: SearchConfig
    classes: list[tuple[CanonicalForm, QuasimetricSpace | None]] = field(default_factory=list)
    explored: int = 0
    candidates: int = 0
    complete: bool = True
    elapsed: float = 0.0

    def to_json_obj(self) -> dict:
        return {
            "n": self.config.n,
            "target_lines": self.config.target_lines,
            "mode": self.config.mode,
            "forbid_universal": self.config.forbid_universal,
            "complete": self.complete,
            "explored": self.explored,
            "candidates": self.candidates,
            "elapsed": round(self.elapsed, 3),
            "classes": [
                {
                    "canonical": cf.to_json_obj(),
                    "line_sizes": lines_of(cf.betweenness()).sizes(),
                    "witness": None if w is None else w.to_json_obj()["dist"],
                }
                for cf, w in self.classes
            ],
        }


# -- precomputed tables ---------------------------------------------------------

@lru_cache(maxsize=None)
def triple_order(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(t for s in combinations(range(n), 3) for t in permutations(s))


def _mask_of(b: Betweenness) -> int:
    index = {t: i for i, t in enumerate(triple_order(b.n))}
    m = 0
    for t in b.triples:
        m |= 1 << index[t]
    return m


@lru_cache(maxsize=None)
def realizable_masks(k: int, mode: str) -> frozenset[int]:
    """Bitmasks (over ``triple_order(k)``) of every realizable labelled
    betweenness on ``k`` points. Only k = 3 and k = 4 are tabulated."""
    if k == 3:
        out = set()
        for m in range(1 << 6):
            b = Betweenness(3, [t for i, t in enumerate(triple_order(3)) if m >> i & 1])
            try:
                if realize(RealizabilityProblem(b, mode)).realizable:
                    out.add(m)
            except ValueError:
                continue
        return frozenset(out)
    if k == 4:
        engine = _Engine(SearchConfig(4, None, False, mode), hereditary=(3,))
        out = set()
        for cand in engine.run():
            b = engine.betweenness(cand)
            if realize(RealizabilityProblem(b, mode)).realizable:
                for perm in permutations(range(4)):
                    out.add(_mask_of(b.relabel(perm)))
        return frozenset(out)
    raise ValueError("only 3- and 4-point tables are supported")


class _Engine:
    def __init__(self, cfg: SearchConfig, hereditary=(3, 4), deadline: float | None = None):
        self.cfg = cfg
        n = self.n = cfg.n
        self.T = triple_order(n)
        self.N = len(self.T)
        self.idx = {t: i for i, t in enumerate(self.T)}
        self.deadline = deadline
        self.explored = 0
        idx = self.idx

        clauses: list[tuple[int, ...]] = []  # literal: +(v+1) true, -(v+1) false
        for x, y, z in self.T:
            a = idx[(x, y, z)] + 1
            for other in ((y, x, z), (x, z, y)):
                clauses.append((-a, -(idx[other] + 1)))
            if cfg.mode == "metric":
                clauses.append((-a, idx[(z, y, x)] + 1))
        for w, x, y, z in permutations(range(n), 4):
            wxy, wyz = idx[(w, x, y)] + 1, idx[(w, y, z)] + 1
            wxz, xyz = idx[(w, x, z)] + 1, idx[(x, y, z)] + 1
            clauses += [(-wxy, -wyz, wxz), (-wxy, -wyz, xyz),
                        (-wxz, -xyz, wxy), (-wxz, -xyz, wyz)]
        self.clauses = list(dict.fromkeys(tuple(sorted(set(c))) for c in clauses))
        self.occurs: list[list[tuple[int, ...]]] = [[] for _ in range(self.N)]
        for c in self.clauses:
            for lit in c:
                self.occurs[abs(lit) - 1].append(c)

        # bookkeeping for three-point subsets, four-point subsets and pairs
        self.sets3 = list(combinations(range(n), 3))
        self.set3_of = [i // 6 for i in range(self.N)]
        self.left3 = [6] * len(self.sets3)
        self.sets4 = list(combinations(range(n), 4))
        self.sets4_of3: list[list[int]] = [[] for _ in self.sets3]
        for j, s4 in enumerate(self.sets4):
            for s3 in combinations(s4, 3):
                self.sets4_of3[self.sets3.index(s3)].append(j)
        self.left4 = [4] * len(self.sets4)
        self.s4_vars = []
        for s4 in self.sets4:
            self.s4_vars.append([idx[tuple(s4[i] for i in t)] for t in triple_order(4)])
        self.pairs = list(combinations(range(n), 2))
        self.pair_sets3 = {}
        for pair in self.pairs:
            self.pair_sets3[pair] = [k for k, s in enumerate(self.sets3) if set(pair) <= set(s)]
        self.left_pair = {pair: n - 2 for pair in self.pairs}
        self.pairs_of3 = [list(combinations(s, 2)) for s in self.sets3]

        self.hereditary = hereditary
        self.R3 = realizable_masks(3, cfg.mode) if 3 in hereditary else None
        self.R4 = realizable_masks(4, cfg.mode) if (4 in hereditary and n > 4) else None

        self.perm_src: list[list[int]] = []
        if cfg.canonical_only:
            for perm in permutations(range(n)):
                if list(perm) == list(range(n)):
                    continue
                inv = [0] * n
                for i, p in enumerate(perm):
                    inv[p] = i
                # position j of the relabelled vector reads position src[j]
                self.perm_src.append(
                    [idx[(inv[x], inv[y], inv[z])] for x, y, z in self.T]
                )

        self.val = [-1] * self.N
        self.trail: list[int] = []
        self.fixed_lines: dict[tuple[int, int], frozenset[int]] = {}
        self.done3: list[int] = []
        self.done4: list[int] = []
        self.lines_changed = False

    # -- assignment with undo --------------------------------------------------
    # Counters for three-point subsets, four-point subsets and pairs move in
    # _set and are restored in _undo_to; checks only read them.

    def _set(self, v: int, value: int) -> None:
        self.val[v] = value
        self.trail.append(v)
        k = self.set3_of[v]
        self.left3[k] -= 1
        if self.left3[k]:
            return
        self.done3.append(k)
        for j in self.sets4_of3[k]:
            self.left4[j] -= 1
            if self.left4[j] == 0:
                self.done4.append(j)
        for pair in self.pairs_of3[k]:
            self.left_pair[pair] -= 1
            if self.left_pair[pair] == 0:
                x, y = pair
                self.fixed_lines[(x, y)] = self._line(x, y)
                self.fixed_lines[(y, x)] = self._line(y, x)
                self.lines_changed = True

    def _undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            v = self.trail.pop()
            k = self.set3_of[v]
            if self.left3[k] == 0:
                for j in self.sets4_of3[k]:
                    self.left4[j] += 1
                for pair in self.pairs_of3[k]:
                    if self.left_pair[pair] == 0:
                        del self.fixed_lines[pair]
                        del self.fixed_lines[pair[::-1]]
                    self.left_pair[pair] += 1
            self.left3[k] += 1
            self.val[v] = -1

    def _propagate(self, queue: list[int]) -> bool:
        val = self.val
        while queue:
            v = queue.pop()
            for clause in self.occurs[v]:
                unassigned = None
                count = 0
                sat = False
                for lit in clause:
                    u = abs(lit) - 1
                    cur = val[u]
                    if cur < 0:
                        count += 1
                        unassigned = lit
                    elif (cur == 1) == (lit > 0):
                        sat = True
                        break
                if sat:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    u = abs(unassigned) - 1
                    self._set(u, 1 if unassigned > 0 else 0)
                    queue.append(u)
        return True

    def _line(self, x: int, y: int) -> frozenset[int]:
        val, idx = self.val, self.idx
        members = {x, y}
        for z in range(self.n):
            if z != x and z != y and (val[idx[(z, x, y)]] == 1 or val[idx[(x, z, y)]] == 1
                                      or val[idx[(x, y, z)]] == 1):
                members.add(z)
        return frozenset(members)

    def _structural_ok(self) -> bool:
        val = self.val
        if self.R3 is not None:
            for k in self.done3:
                base = 6 * k
                m = 0
                for i in range(6):
                    if val[base + i]:
                        m |= 1 << i
                if m not in self.R3:
                    return False
        if self.R4 is not None:
            for j in self.done4:
                m = 0
                for i, u in enumerate(self.s4_vars[j]):
                    if val[u]:
                        m |= 1 << i
                if m not in self.R4:
                    return False
        if self.lines_changed:
            distinct = set(self.fixed_lines.values())
            if self.cfg.forbid_universal and any(len(m) == self.n for m in distinct):
                return False
            if self.cfg.target_lines is not None and len(distinct) > self.cfg.target_lines:
                return False
        return True

    def _could_be_canonical(self) -> bool:
        val = self.val
        for src in self.perm_src:
            for j in range(self.N):
                a = val[j]
                b = val[src[j]]
                if a < 0 or b < 0 or b < a:
                    break
                if b > a:
                    return False
        return True

    def _assign(self, v: int, value: int) -> bool:
        """Assign, propagate and check; on failure the caller undoes."""
        self.done3, self.done4, self.lines_changed = [], [], False
        self._set(v, value)
        if not self._propagate([v]):
            return False
        if not self._structural_ok():
            return False
        return self._could_be_canonical()

    def _out_of_time(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def run(self):
        """Yield bitmasks of complete assignments passing all local checks."""
        cfg = self.cfg

        def dfs(start: int):
            self.explored += 1
            if self._out_of_time():
                raise _Timeout
            v = start
            while v < self.N and self.val[v] >= 0:
                v += 1
            if v == self.N:
                if cfg.target_lines is not None:
                    distinct = set(self.fixed_lines.values())
                    if len(distinct) != cfg.target_lines:
                        return
                yield sum(1 << i for i in range(self.N) if self.val[i] == 1)
                return
            for value in (1, 0):
                mark = len(self.trail)
                if self._assign(v, value):
                    yield from dfs(v + 1)
                self._undo_to(mark)

        yield from dfs(0)

    def betweenness(self, mask: int) -> Betweenness:
        return Betweenness(self.n, [t for i, t in enumerate(self.T) if mask >> i & 1])


class _Timeout(Exception):
    pass


def enumerate_betweennesses(cfg: SearchConfig, raise_on_budget: bool = True) -> SearchReport:
    start = time.monotonic()
    report = SearchReport(cfg)
    engine = _Engine(cfg)
    # the budget covers the search itself, not building the sub-relation tables
    if cfg.time_budget is not None:
        engine.deadline = time.monotonic() + cfg.time_budget
    seen: set[CanonicalForm] = set()
    try:
        for mask in engine.run():
            report.candidates += 1
            b = engine.betweenness(mask)
            if cfg.forbid_universal and any(e.universal for e in lines_of(b).lines):
                continue
            cert = realize(RealizabilityProblem(b, cfg.mode))
            if not cert.realizable:
                continue
            cf = canonical_form(b)
            if cf in seen:
                continue
            seen.add(cf)
            report.classes.append((cf, cert.witness.relabel(cf.witness)))
    except _Timeout:
        report.complete = False
    report.explored = engine.explored
    report.elapsed = time.monotonic() - start
    report.classes.sort(key=lambda item: item[0].triples)
    if not report.complete and raise_on_budget:
        raise BudgetExhausted(report)
    return report


def classify_constructions(n: int, family: str) -> SearchReport:
    """Census of every parameterised construction of the family on ``n`` points.

    ``family`` is ``"C"`` (three lines, ``p+q+r = n``) or ``"D"`` (both
    four-line variants, ``p+q+r+1 = n``).
    """
    start = time.monotonic()
    if family == "C":
        if n < 3:
            raise ValueError("family C needs n >= 3")
        items = [("C", t) for t in partition_triples(n)]
        target = 3
    elif family == "D":
        if n < 4:
            raise ValueError("family D needs n >= 4")
        items = [(f, t) for t in partition_triples(n - 1) for f in ("D1", "D2")]
        target = 4
    else:
        raise ValueError(f"family must be 'C' or 'D', got {family!r}")
    report = SearchReport(SearchConfig(n, target, True, "quasimetric"))
    seen: dict[CanonicalForm, QuasimetricSpace] = {}
    for fam, t in items:
        space = shortest_path_space(construct(fam, t))
        cf = canonical_form(betweenness_of(space))
        seen.setdefault(cf, space.relabel(cf.witness))
        report.explored += 1
    report.candidates = len(items)
    report.classes = sorted(seen.items(), key=lambda item: item[0].triples)
    report.elapsed = time.monotonic() - start
    return report
