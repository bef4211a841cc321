"""Partitions, Young tableaux, characters of symmetric groups, and Young symmetrizers.

Permutations follow :mod:`pi_codim.perms` (0-based one-line notation,
``compose(p, q)`` applies ``q`` first).  A tableau entry ``v`` (1-based)
corresponds to the point ``v - 1`` acted on by permutations.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import as_scalar
from .perms import Perm, compose, identity, perm_sign

DEFAULT_TABLEAU_CAP = 8


class CapExceeded(ValueError):
    pass


class Partition:
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        return cls(int(x) for x in text.split(",") if x.strip()) if text else cls()

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other: "Partition"):
        return self.parts < other.parts

    def __repr__(self):
        return f"Partition{self.parts}"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(sum(1 for x in self.parts if x > j) for j in range(self.parts[0]))

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.parts) for j in range(r)]

    def hook_lengths(self) -> list[list[int]]:
        conj = self.conjugate().parts
        return [[r - j + conj[j] - i - 1 for j in range(r)] for i, r in enumerate(self.parts)]

    def cells_below(self, d: int) -> int:
        """Number of cells in rows ``d+1, d+2, ...``."""
        return sum(self.parts[d:])


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order (``(n)`` first)."""
    if n < 0:
        return
    if max_part is None:
        max_part = n

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, max_part):
        yield Partition(parts)


def hook_dimension(lam: Partition | Sequence[int]) -> int:
    """Dimension of the irreducible module ``n! / prod(hooks)``."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    hooks = prod(h for row in lam.hook_lengths() for h in row)
    return factorial(lam.weight) // hooks


# ---------------------------------------------------------------------------
# tableaux


class Tableau:
    """Young tableau: a bijective filling of a diagram by ``1..n``."""

    __slots__ = ("shape", "rows")

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        self.shape = Partition(len(r) for r in rows)
        n = self.shape.weight
        if sorted(x for r in rows for x in r) != list(range(1, n + 1)):
            raise ValueError("a tableau must use each of 1..n exactly once")
        self.rows = rows

    @classmethod
    def canonical(cls, shape: Partition | Sequence[int]) -> "Tableau":
        """Row-major filling ``1..n``."""
        shape = shape if isinstance(shape, Partition) else Partition(shape)
        rows, k = [], 1
        for r in shape:
            rows.append(list(range(k, k + r)))
            k += r
        return cls(rows)

    @property
    def weight(self) -> int:
        return self.shape.weight

    def columns(self) -> list[tuple[int, ...]]:
        conj = self.shape.conjugate()
        return [tuple(self.rows[i][j] for i in range(conj[j])) for j in range(len(conj))]

    def is_standard(self) -> bool:
        rows_ok = all(r[i] < r[i + 1] for r in self.rows for i in range(len(r) - 1))
        cols_ok = all(c[i] < c[i + 1] for c in self.columns() for i in range(len(c) - 1))
        return rows_ok and cols_ok

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Tableau({[list(r) for r in self.rows]})"


def standard_tableaux(shape: Partition | Sequence[int]) -> Iterator[Tableau]:
    """All standard tableaux of a shape, by placing ``n, n-1, ...`` in removable corners."""
    shape = shape if isinstance(shape, Partition) else Partition(shape)

    def rec(parts: tuple[int, ...]):
        n = sum(parts)
        if n == 0:
            yield [[] for _ in shape.parts]
            return
        for i, r in enumerate(parts):
            if r and (i + 1 == len(parts) or parts[i + 1] < r):
                smaller = parts[:i] + (r - 1,) + parts[i + 1:]
                for filling in rec(smaller):
                    filling = [list(x) for x in filling]
                    filling[i].append(n)
                    yield filling

    for filling in rec(shape.parts):
        yield Tableau(filling)


def _group_from_blocks(blocks: Sequence[Sequence[int]], n: int) -> list[Perm]:
    """All permutations of ``0..n-1`` preserving each block (entries 1-based) setwise."""
    out = []
    pieces = [[x - 1 for x in b] for b in blocks]
    for choice in product(*(permutations(b) for b in pieces)):
        p = list(range(n))
        for src, img in zip(pieces, choice):
            for a, b in zip(src, img):
                p[a] = b
        out.append(tuple(p))
    return out


def stabilizers(T: Tableau, cap: int = DEFAULT_TABLEAU_CAP) -> tuple[list[Perm], list[Perm]]:
    """Row and column stabilizers of ``T`` as explicit permutation lists."""
    if T.weight > cap:
        raise CapExceeded(f"tableau weight {T.weight} exceeds cap {cap}")
    return _group_from_blocks(T.rows, T.weight), _group_from_blocks(T.columns(), T.weight)


# ---------------------------------------------------------------------------
# group algebra


class GroupAlgebraElement:
    """Finitely supported rational combination of permutations of a fixed degree."""

    __slots__ = ("n", "_support")

    def __init__(self, n: int, support: Mapping[Perm, object] | Iterable[tuple[Perm, object]] = ()):
        items = support.items() if isinstance(support, Mapping) else support
        acc: dict[Perm, Fraction] = {}
        for p, c in items:
            p = tuple(p)
            if sorted(p) != list(range(n)):
                raise ValueError(f"{p} is not a permutation of {n} points")
            acc[p] = acc.get(p, 0) + as_scalar(c)
        self.n = n
        self._support = {p: c for p, c in acc.items() if c}

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {identity(n): 1})

    @classmethod
    def sum_of(cls, n: int, perms: Iterable[Perm], signed: bool = False) -> "GroupAlgebraElement":
        return cls(n, [(p, perm_sign(p) if signed else 1) for p in perms])

    @property
    def support(self) -> dict[Perm, Fraction]:
        return dict(self._support)

    def items(self):
        return sorted(self._support.items())

    def __add__(self, other):
        return GroupAlgebraElement(self.n, list(self._support.items()) + list(other._support.items()))

    def __sub__(self, other):
        return GroupAlgebraElement(self.n, list(self._support.items()) + [(p, -c) for p, c in other._support.items()])

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            if other.n != self.n:
                raise ValueError("degree mismatch")
            acc: dict[Perm, Fraction] = {}
            for p, a in self._support.items():
                for q, b in other._support.items():
                    r = compose(p, q)
                    acc[r] = acc.get(r, 0) + a * b
            return GroupAlgebraElement(self.n, acc)
        c = as_scalar(other)
        return GroupAlgebraElement(self.n, {p: c * x for p, x in self._support.items()})

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.n == other.n and self._support == other._support

    def __hash__(self):
        return hash((self.n, tuple(sorted(self._support.items()))))

    def __repr__(self):
        return f"GroupAlgebraElement(n={self.n}, terms={len(self._support)})"

    def is_zero(self) -> bool:
        return not self._support


def young_symmetrizer(T: Tableau, cap: int = DEFAULT_TABLEAU_CAP) -> GroupAlgebraElement:
    """``(sum of row stabilizer) * (signed sum of column stabilizer)``."""
    rows, cols = stabilizers(T, cap)
    n = T.weight
    return GroupAlgebraElement.sum_of(n, rows) * GroupAlgebraElement.sum_of(n, cols, signed=True)


def quasi_idempotency_constant(shape: Partition) -> Fraction:
    """``gamma = n! / d_lambda`` with ``e^2 = gamma e``."""
    return Fraction(factorial(shape.weight), hook_dimension(shape))


def apply_group_element(g: GroupAlgebraElement, p, on):
    """Linear extension of ``sigma . f = f(z_sigma(1), ..., z_sigma(n))`` on the listed variables."""
    from .poly import MultiPoly
    if len(on) != g.n:
        raise ValueError("slot list length differs from the group degree")
    out = MultiPoly.zero(p.variables)
    for perm, c in g.items():
        out = out + c * p.permute(perm, on)
    return out


# ---------------------------------------------------------------------------
# characters


def z_value(cls: Partition | Sequence[int]) -> int:
    """Centralizer order ``prod_i i^{m_i} m_i!`` of the class with cycle type ``cls``."""
    counts = Counter(cls)
    return prod(i ** m * factorial(m) for i, m in counts.items())


def class_size(cls: Partition | Sequence[int]) -> int:
    return factorial(sum(cls)) // z_value(cls)


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], cls: tuple[int, ...]) -> int:
    if not cls:
        return 1
    r, rest = cls[0], cls[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in occupied:
            continue
        between = sum(1 for x in beta if nb < x < b)
        new = tuple(sorted((occupied - {b}) | {nb}, reverse=True))
        total += (-1) ** between * _mn(new, rest)
    return total


def mn_character(lam: Partition | Sequence[int], cls: Partition | Sequence[int]) -> int:
    """``chi_lambda`` on the class of cycle type ``cls`` by the Murnaghan-Nakayama rule (bead form)."""
    lam = tuple(lam)
    cls = tuple(sorted(cls, reverse=True))
    if sum(lam) != sum(cls):
        raise ValueError("partition and class have different weights")
    ell = len(lam)
    beta = tuple(lam[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, cls)


def character_table(n: int) -> dict[tuple[Partition, Partition], int]:
    return {(lam, mu): mn_character(lam, mu) for lam in partitions(n) for mu in partitions(n)}


# ---------------------------------------------------------------------------
# dimension bounds


def rectangular_lower_bound(d: int, s: int) -> tuple[int, Fraction]:
    """``(d_nu, N^{-d(d-1)/2} d^N)`` for the rectangle ``nu = (s^d)``, ``N = s d``."""
    if d < 1 or s < 1:
        raise ValueError("need d, s >= 1")
    N = s * d
    dim = hook_dimension(Partition([s] * d))
    return dim, Fraction(d ** N, N ** (d * (d - 1) // 2))


def rectangular_crossover(d: int, s_max: int) -> list[dict]:
    """Table of ``s -> (dimension, bound, dimension > bound)`` for ``s = 1..s_max``."""
    rows = []
    for s in range(1, s_max + 1):
        dim, bound = rectangular_lower_bound(d, s)
        rows.append({"s": s, "dim": dim, "bound": bound, "exceeds": dim > bound})
    return rows


def dimension_bound_violations(n_max: int = 12, d_max: int = 4, m_max: int = 3) -> tuple[int, list[tuple]]:
    """Check ``d_lambda <= n^m d^n`` for every ``lambda |- n`` with at most ``m`` cells below row ``d``.

    Returns ``(number of checked triples, violations)``.
    """
    checked, bad = 0, []
    for n in range(1, n_max + 1):
        for lam in partitions(n):
            dl = hook_dimension(lam)
            for d in range(1, d_max + 1):
                below = lam.cells_below(d)
                for m in range(0, m_max + 1):
                    if below > m:
                        continue
                    checked += 1
                    if dl > n ** m * d ** n:
                        bad.append((n, d, m, lam.parts))
    return checked, bad
