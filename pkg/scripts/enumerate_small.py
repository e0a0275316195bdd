"""Exhaustive search for betweennesses with a given number of lines and no
universal line, compared against the construction classes."""

import argparse

from qlines.enumeration import SearchConfig, classify_constructions, enumerate_betweennesses

FAMILY = {3: "C", 4: "D"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5])
    ap.add_argument("--lines", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--mode", choices=["quasimetric", "metric"], default="quasimetric")
    ap.add_argument("--budget", type=float, default=None, help="seconds per search")
    args = ap.parse_args()

    for n in args.n:
        for k in args.lines:
            cfg = SearchConfig(n, k, True, args.mode, args.budget)
            rep = enumerate_betweennesses(cfg, raise_on_budget=False)
            line = f"n={n} lines={k} mode={args.mode}: {len(rep.classes)} classes, " \
                   f"complete={rep.complete}, {rep.elapsed:.1f}s"
            if k in FAMILY and n >= k:
                known = {cf for cf, _ in classify_constructions(n, FAMILY[k]).classes}
                found = {cf for cf, _ in rep.classes}
                line += f", constructions={len(known)}, outside={len(found - known)}"
            print(line)


if __name__ == "__main__":
    main()
