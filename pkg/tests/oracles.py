"""Independent reference implementations used only by the tests.

Nothing here calls into the elimination, block-model or character code it is
used to check.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import permutations, product

import numpy as np


def naive_rank(rows) -> int:
    """Textbook Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    n, m = len(a), len(a[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == n:
            break
    return r


# ---------------------------------------------------------------------------
# dense model of S(t)


def star_dense(a: np.ndarray, kind: str) -> np.ndarray:
    """Reflection along the secondary diagonal, conjugated by diag(1,..,1,-1,..,-1) when symplectic."""
    t = a.shape[0]
    out = np.empty_like(a)
    for i in range(t):
        for j in range(t):
            out[i, j] = a[t - 1 - j, t - 1 - i]
    if kind == "sympl":
        d = [1 if i < t // 2 else -1 for i in range(t)]
        for i in range(t):
            for j in range(t):
                out[i, j] = d[i] * out[i, j] * d[j]
    return out


def unit(t, i, j):
    a = np.full((t, t), Fraction(0), dtype=object)
    a[i - 1, j - 1] = Fraction(1)
    return a


def block(a, b, c, d):
    return np.block([[a, b], [c, d]])


def dense_supercommutator(x, y, px, py):
    sign = -1 if px * py else 1
    return x.dot(y) - sign * y.dot(x)


def upper_units(t):
    return [(i, j) for i in range(1, t + 1) for j in range(i, t + 1)]


def is_in_S(mat: np.ndarray, t: int, kind: str) -> bool:
    """Membership test straight from the block description ``(x, y; z, -x*)``."""
    x, y = mat[:t, :t], mat[:t, t:]
    z, w = mat[t:, :t], mat[t:, t:]

    def upper(a):
        return all(a[i, j] == 0 for i in range(t) for j in range(i))

    return (upper(x) and upper(y) and upper(z) and np.array_equal(w, -star_dense(x, kind))
            and np.array_equal(star_dense(y, kind), y) and np.array_equal(star_dense(z, kind), -z))


# ---------------------------------------------------------------------------
# symmetric group


def cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def fixed_tabloids(mu, perm) -> int:
    """Row tabloids of shape ``mu`` fixed by ``perm`` (the permutation character of a Young subgroup)."""
    n = len(perm)
    count = 0
    for rows in product(range(len(mu)), repeat=n):
        if Counter(rows) != Counter({i: m for i, m in enumerate(mu)}):
            continue
        if all(rows[perm[i]] == rows[i] for i in range(n)):
            count += 1
    return count


def kostka(lam, mu) -> int:
    """Semistandard tableaux of shape ``lam`` and content ``mu``, by brute force."""
    cells = [(r, c) for r, l in enumerate(lam) for c in range(l)]
    count = 0
    for fill in product(range(len(mu)), repeat=len(cells)):
        if Counter(fill) != Counter({i: m for i, m in enumerate(mu) if m}):
            continue
        val = dict(zip(cells, fill))
        ok = all(val[(r, c)] <= val[(r, c + 1)] for r, c in cells if (r, c + 1) in val)
        ok = ok and all(val[(r, c)] < val[(r + 1, c)] for r, c in cells if (r + 1, c) in val)
        count += ok
    return count


def count_standard_tableaux(shape) -> int:
    """Count fillings by 1..n increasing along rows and columns, by brute force over orderings."""
    cells = [(r, c) for r, l in enumerate(shape) for c in range(l)]
    count = 0
    for order in permutations(range(len(cells))):
        val = dict(zip(cells, order))
        if all(val[(r, c)] < val[(r, c + 1)] for r, c in cells if (r, c + 1) in val) and \
                all(val[(r, c)] < val[(r + 1, c)] for r, c in cells if (r + 1, c) in val):
            count += 1
    return count
