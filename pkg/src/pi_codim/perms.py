"""Permutations in 0-based one-line notation.

``p[i]`` is the image of ``i``.  Composition applies the right factor first:
``compose(p, q)[i] == p[q[i]]``.
"""
from __future__ import annotations

from itertools import permutations
from typing import Iterator, Sequence

Perm = tuple  # tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths in weakly decreasing order."""
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def perm_sign(p: Sequence[int]) -> int:
    return -1 if sum(c - 1 for c in cycle_type(p)) % 2 else 1


def signed_permutations(n: int) -> Iterator[tuple[int, Perm]]:
    for p in permutations(range(n)):
        yield perm_sign(p), p


def all_permutations(n: int) -> list[Perm]:
    return list(permutations(range(n)))
