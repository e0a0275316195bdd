"""Count isomorphism classes produced by the three- and four-line constructions.

Prints, for each n, the number of classes found next to p3(n) (C family) or
2*p3(n-1), rotation_classes(n-1) + end_swap_classes(n-1) (D families).
"""

import argparse

from qlines.enumeration import classify_constructions
from qlines.partitions import end_swap_classes, p3, rotation_classes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()

    print("family  n  classes  p3(n)")
    for n in range(4, args.max_n + 1):
        print(f"C      {n:2d}  {len(classify_constructions(n, 'C').classes):7d}  {p3(n):5d}")
    print()
    print("family  n  classes  2*p3(n-1)  rot+swap")
    for n in range(5, args.max_n + 1):
        found = len(classify_constructions(n, "D").classes)
        print(f"D      {n:2d}  {found:7d}  {2 * p3(n - 1):9d}  "
              f"{rotation_classes(n - 1) + end_swap_classes(n - 1):8d}")


if __name__ == "__main__":
    main()
