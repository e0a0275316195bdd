"""Integer partitions, used to count expected isomorphism classes."""

from __future__ import annotations

from typing import Iterator


def partitions(n: int, parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into exactly ``parts`` positive parts, non-increasing."""
    if largest is None:
        largest = n
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n - parts + 1, largest), 0, -1):
        for rest in partitions(n - first, parts - 1, first):
            yield (first,) + rest


def p3(n: int) -> int:
    return sum(1 for _ in partitions(n, 3))


def compositions3(n: int) -> Iterator[tuple[int, int, int]]:
    for p in range(1, n - 1):
        for q in range(1, n - p):
            yield (p, q, n - p - q)


def rotation_classes(n: int) -> int:
    """Ordered triples summing to ``n`` up to cyclic rotation."""
    return len({min((a, b, c), (b, c, a), (c, a, b)) for a, b, c in compositions3(n)})


def end_swap_classes(n: int) -> int:
    """Ordered triples summing to ``n`` up to exchanging first and last entry."""
    return len({min((a, b, c), (c, b, a)) for a, b, c in compositions3(n)})
