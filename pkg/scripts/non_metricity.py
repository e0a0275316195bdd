"""Exact LP verdicts for each construction instance, metric and quasimetric."""

import argparse

from qlines.constructions import expected_betweenness
from qlines.partitions import compositions3
from qlines.realizability import RealizabilityProblem, realize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    items = [("C", t) for n in range(3, args.max_n + 1) for t in compositions3(n)]
    items += [(f, t) for n in range(4, args.max_n + 1) for t in compositions3(n - 1) for f in ("D1", "D2")]
    for family, t in items:
        b = expected_betweenness(family, t)
        metric = realize(RealizabilityProblem(b, "metric")).verdict
        quasi = realize(RealizabilityProblem(b, "quasimetric")).verdict
        print(f"{family:2s} {t}  n={b.n}  metric={metric:10s}  quasimetric={quasi}")


if __name__ == "__main__":
    main()
