"""Exact rational phase-one simplex for linear feasibility problems.

Constraints are ``sum(coeffs[j] * x_j) (<=|>=|==) rhs`` over variables
``x_j >= 0``. Pivoting follows Bland's rule, so the method terminates even on
the heavily degenerate systems produced by betweenness problems. Rows are
stored sparsely as dicts; every value is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

LE, GE, EQ = "<=", ">=", "=="


@dataclass
class LinearSystem:
    nvars: int
    rows: list[tuple[dict[int, Fraction], str, Fraction]] = field(default_factory=list)

    def add(self, coeffs: Mapping[int, object], sense: str, rhs: object = 0) -> None:
        if sense not in (LE, GE, EQ):
            raise ValueError(f"bad sense {sense!r}")
        clean: dict[int, Fraction] = {}
        for j, a in coeffs.items():
            if not 0 <= j < self.nvars:
                raise IndexError(j)
            a = Fraction(a)
            if a:
                clean[j] = clean.get(j, Fraction(0)) + a
        clean = {j: a for j, a in clean.items() if a}
        self.rows.append((clean, sense, Fraction(rhs)))

    def satisfied_by(self, x: list[Fraction]) -> bool:
        if any(v < 0 for v in x):
            return False
        for coeffs, sense, rhs in self.rows:
            lhs = sum((a * x[j] for j, a in coeffs.items()), Fraction(0))
            if sense == LE and lhs > rhs or sense == GE and lhs < rhs or sense == EQ and lhs != rhs:
                return False
        return True


@dataclass
class SimplexStats:
    pivots: int = 0
    rows: int = 0
    columns: int = 0


def find_feasible_point(system: LinearSystem, stats: SimplexStats | None = None) -> list[Fraction] | None:
    """A vertex of ``{x >= 0 : system}`` or ``None`` when the set is empty."""
    nv = system.nvars
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    n_extra = 0
    artificial: list[int] = []
    pending = []  # rows that still need an artificial start column

    for coeffs, sense, b in system.rows:
        coeffs = dict(coeffs)
        if b < 0:
            coeffs = {j: -a for j, a in coeffs.items()}
            b = -b
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
        if sense == LE:
            col = nv + n_extra
            n_extra += 1
            coeffs[col] = Fraction(1)
            rows.append(coeffs)
            rhs.append(b)
            basis.append(col)
        else:
            if sense == GE:
                col = nv + n_extra
                n_extra += 1
                coeffs[col] = Fraction(-1)
            rows.append(coeffs)
            rhs.append(b)
            basis.append(-1)
            pending.append(len(rows) - 1)

    first_art = nv + n_extra
    for k, i in enumerate(pending):
        col = first_art + k
        rows[i][col] = Fraction(1)
        basis[i] = col
        artificial.append(col)
    ncols = first_art + len(artificial)
    if stats is not None:
        stats.rows, stats.columns = len(rows), ncols

    # phase-one objective: minimise the sum of artificials; keep reduced costs
    # in ``cost`` and the (negated) objective value in ``obj``
    cost: dict[int, Fraction] = {}
    obj = Fraction(0)
    for i in pending:
        for j, a in rows[i].items():
            if j < first_art:
                cost[j] = cost.get(j, Fraction(0)) - a
        obj -= rhs[i]
    cost = {j: a for j, a in cost.items() if a}

    # column index -> rows with a nonzero in that column
    where: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        for j in row:
            where.setdefault(j, set()).add(i)

    pivots = 0
    while True:
        entering = min((j for j, a in cost.items() if a < 0), default=None)
        if entering is None:
            break
        leave = -1
        best = None
        for i in where.get(entering, ()):
            a = rows[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            # unbounded direction cannot happen in phase one (objective >= 0)
            raise ArithmeticError("phase-one simplex reported unbounded")
        _pivot(rows, rhs, where, leave, entering)
        f = cost.get(entering)
        if f:
            prow = rows[leave]
            for j, a in prow.items():
                v = cost.get(j, Fraction(0)) - f * a
                if v:
                    cost[j] = v
                else:
                    cost.pop(j, None)
            obj -= f * rhs[leave]
        basis[leave] = entering
        pivots += 1

    if stats is not None:
        stats.pivots = pivots
    if obj != 0:
        return None
    x = [Fraction(0)] * nv
    for i, col in enumerate(basis):
        if col < nv:
            x[col] = rhs[i]
    return x


def _pivot(rows, rhs, where, i, j):
    prow = rows[i]
    inv = 1 / prow[j]
    if inv != 1:
        for k in prow:
            prow[k] *= inv
        rhs[i] *= inv
    for r in list(where[j]):
        if r == i:
            continue
        row = rows[r]
        f = row[j]
        for k, a in prow.items():
            v = row.get(k, 0) - f * a
            if v:
                row[k] = v
                where.setdefault(k, set()).add(r)
            elif k in row:
                del row[k]
                where[k].discard(r)
        rhs[r] -= f * rhs[i]
