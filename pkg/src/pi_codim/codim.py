"""Graded codimensions, cocharacters and colengths by exact evaluation.

For a sector ``(k, m)`` the *evaluation matrix* has one row per left-normed
monomial ``[z_s(1), ..., z_s(n)]`` over ``x1..xk, y1..ym`` (rows in
``itertools.permutations`` order) and one column per pair
``(assignment, coordinate)``: an assignment sends each even variable to an
even basis vector and each odd variable to an odd basis vector, enumerated in
lexicographic order of the index tuples.  Its row space is the image of the
multilinear polynomials in the functions on substitutions, i.e. ``P_{k,m}``
modulo the graded identities, so its rank is the partial codimension.

Numerics: rows are built with numpy ``int64`` (structure constants are scaled
to integers; a uniform scale does not change ranks), with a magnitude bound
checked in advance and a fall-back to Python integers when it could overflow.
Zero columns are dropped and proportional columns merged before the exact
(fraction-free) rank computation.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb, factorial, gcd, lcm
from typing import Sequence

import numpy as np

from .algebra import EVEN, ODD, GradedAlgebra
from .linalg import integer_rank, integer_rref
from .symfunc import Partition, hook_dimension, mn_character, partitions, z_value

DEFAULT_DEGREE_CAP = 7
DEFAULT_CHARACTER_CAP = 6
_CHUNK_ELEMS = 4_000_000
_INT64_SAFE = 2 ** 62


class CapExceeded(ValueError):
    pass


class InternalCheckError(RuntimeError):
    """A self-diagnostic failed (e.g. a non-integral multiplicity)."""


# ---------------------------------------------------------------------------
# evaluation matrices


def _right_mult(alg: GradedAlgebra) -> tuple[list[np.ndarray], int, int]:
    """Integer matrices ``R[b]`` with ``coords([v, b]) = v @ R[b] / D``; returns (R, D, max row 1-norm)."""
    d = alg.dim
    den = 1
    for prod_ in alg.table.values():
        for _, c in prod_:
            den = lcm(den, c.denominator)
    mats = [np.zeros((d, d), dtype=object) for _ in range(d)]
    for (i, j), prod_ in alg.table.items():
        for k, c in prod_:
            mats[j][i, k] = int(c * den)
    norm = 0
    for r in mats:
        a = np.abs(r)
        norm = max(norm, int(a.sum(axis=0).max()), int(a.sum(axis=1).max()))
    return mats, den, norm


def cost_estimate(alg: GradedAlgebra, k: int, m: int) -> int:
    """Number of matrix entries the sector's evaluation matrix has before reduction."""
    n0 = alg.parity.count(EVEN)
    n1 = alg.dim - n0
    return factorial(k + m) * n0 ** k * n1 ** m * alg.dim


@dataclass
class EvaluationData:
    """Reduced evaluation matrix of one sector plus the map back to the original columns."""

    k: int
    m: int
    even_idx: list[int]
    odd_idx: list[int]
    dim: int
    reduced: np.ndarray  # object array, rows = monomials, columns = distinct primitive columns
    col_index: np.ndarray  # per original column: reduced column or -1
    col_scale: list  # per original column: integer s with original = s * reduced
    seconds: float = 0.0

    @property
    def n(self) -> int:
        return self.k + self.m

    @property
    def n_assignments(self) -> int:
        return len(self.even_idx) ** self.k * len(self.odd_idx) ** self.m

    def assignment_index(self, a: Sequence[int]) -> int:
        """Position of an assignment given as positions inside the even/odd index lists."""
        idx = 0
        for j, x in enumerate(a):
            base = len(self.even_idx) if j < self.k else len(self.odd_idx)
            idx = idx * base + x
        return idx

    def assignment(self, idx: int) -> list[int]:
        out = []
        for j in reversed(range(self.n)):
            base = len(self.even_idx) if j < self.k else len(self.odd_idx)
            out.append(idx % base)
            idx //= base
        return out[::-1]


def _assignment_digits(n0: int, n1: int, k: int, m: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the lexicographic table of assignments, as local positions."""
    idx = np.arange(start, stop, dtype=np.int64)
    n = k + m
    out = np.zeros((stop - start, n), dtype=np.int64)
    for j in reversed(range(n)):
        base = n0 if j < k else n1
        out[:, j] = idx % base
        idx //= base
    return out


def _evaluate_chunk(digits: np.ndarray, k: int, m: int, even_idx, odd_idx, mats, dtype, d) -> np.ndarray:
    """Rows = all words (permutations order), columns = (assignment in chunk, coordinate)."""
    n = k + m
    A = digits.shape[0]
    basis_of = [np.asarray(even_idx if j < k else odd_idx, dtype=np.int64)[digits[:, j]] for j in range(n)]
    groups = []
    for j in range(n):
        g = []
        for b in np.unique(basis_of[j]):
            g.append((np.flatnonzero(basis_of[j] == b), mats[int(b)]))
        groups.append(g)
    out = np.zeros((factorial(n), A * d), dtype=dtype)
    row = 0

    def start_value(j):
        v = np.zeros((A, d), dtype=dtype)
        v[np.arange(A), basis_of[j]] = 1
        return v

    def dfs(used: list[bool], depth: int, v: np.ndarray):
        nonlocal row
        if depth == n:
            out[row] = v.reshape(-1)
            row += 1
            return
        if depth and not v.any():
            # every completion of this prefix vanishes
            row += factorial(n - depth)
            return
        for j in range(n):
            if used[j]:
                continue
            if depth == 0:
                nv = start_value(j)
            else:
                nv = np.zeros_like(v)
                for rows_, mat in groups[j]:
                    nv[rows_] = v[rows_] @ mat
            used[j] = True
            dfs(used, depth + 1, nv)
            used[j] = False

    dfs([False] * n, 0, None)
    return out


def _normalize_columns(block: np.ndarray):
    """Primitive, sign-normalized columns with the scale taking them back."""
    if block.dtype == object:
        out = block.copy()
        scales = []
        for c in range(block.shape[1]):
            nz = [int(x) for x in block[:, c] if x]
            g = 0
            for x in nz:
                g = gcd(g, x)
            s = g if nz[0] > 0 else -g
            out[:, c] = block[:, c] // s
            scales.append(s)
        return out, scales
    g = np.gcd.reduce(block, axis=0)
    nz = block != 0
    first_idx = np.argmax(nz, axis=0)
    first = block[first_idx, np.arange(block.shape[1])]
    s = np.where(first < 0, -g, g)
    return block // s, [int(x) for x in s]


def evaluation_data(alg: GradedAlgebra, k: int, m: int, cap: int = DEFAULT_DEGREE_CAP) -> EvaluationData:
    """Build the reduced evaluation matrix of sector ``(k, m)``."""
    n = k + m
    if n < 1:
        raise ValueError("need k + m >= 1")
    if n > cap:
        raise CapExceeded(f"degree {n} exceeds the cap {cap}; the evaluation matrix would have about "
                          f"{cost_estimate(alg, k, m):,} entries before reduction (raise the cap to proceed)")
    t0 = time.perf_counter()
    even_idx = alg.indices_of_parity(EVEN)
    odd_idx = alg.indices_of_parity(ODD)
    d = alg.dim
    n0, n1 = len(even_idx), len(odd_idx)
    A = n0 ** k * n1 ** m
    mats, _, norm = _right_mult(alg)
    dtype = np.int64 if max(norm, 1) ** max(n - 1, 0) < _INT64_SAFE else object
    mats = [mt.astype(dtype) for mt in mats]
    col_index = np.full(A * d, -1, dtype=np.int64)
    col_scale = [0] * (A * d)
    uniq: dict[bytes, int] = {}
    columns: list[np.ndarray] = []
    chunk = max(1, _CHUNK_ELEMS // max(1, factorial(n) * d))
    for start in range(0, A, chunk):
        stop = min(A, start + chunk)
        block = _evaluate_chunk(_assignment_digits(n0, n1, k, m, start, stop), k, m, even_idx, odd_idx,
                                mats, dtype, d)
        nzc = np.flatnonzero(np.any(block != 0, axis=0))
        if nzc.size == 0:
            continue
        prim, scales = _normalize_columns(block[:, nzc])
        for pos, c in enumerate(nzc):
            col = prim[:, pos]
            key = col.tobytes() if dtype is not object else repr(tuple(col)).encode()
            j = uniq.get(key)
            if j is None:
                j = len(columns)
                uniq[key] = j
                columns.append(col)
            col_index[start * d + c] = j
            col_scale[start * d + c] = scales[pos]
    nrows = factorial(n)
    if columns:
        reduced = np.empty((nrows, len(columns)), dtype=object)
        for j, col in enumerate(columns):
            reduced[:, j] = [int(x) for x in col]
    else:
        reduced = np.zeros((nrows, 0), dtype=object)
    return EvaluationData(k, m, even_idx, odd_idx, d, reduced, col_index, col_scale,
                          time.perf_counter() - t0)


def partial_codimension(alg: GradedAlgebra, k: int, m: int, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """``c_{k,m}``: rank of the sector's evaluation matrix."""
    if alg.dim == 0:
        return 0
    data = evaluation_data(alg, k, m, cap)
    return integer_rank(data.reduced) if data.reduced.shape[1] else 0


# ---------------------------------------------------------------------------
# cocharacters


@dataclass(frozen=True)
class SectorReport:
    k: int
    m: int
    codim: int
    multiplicities: dict = field(default_factory=dict)  # (Partition, Partition) -> int, nonzero only
    colength: int | None = None

    def to_json(self) -> dict:
        out = {"k": self.k, "m": self.m, "codim": str(self.codim)}
        if self.colength is not None:
            out["colength"] = str(self.colength)
            out["multiplicities"] = [
                {"lambda": list(lam.parts), "mu": list(mu.parts), "mult": str(v)}
                for (lam, mu), v in sorted(self.multiplicities.items(), key=lambda kv: (kv[0][0].parts,
                                                                                        kv[0][1].parts))]
        return out


def _class_rep(cls: Partition, offset: int) -> list[int]:
    """A permutation (on ``offset..offset+|cls|-1``) of cycle type ``cls``, as image list."""
    out = []
    pos = offset
    for c in cls:
        out += [pos + (i + 1) % c for i in range(c)]
        pos += c
    return out


def class_traces(data: EvaluationData) -> tuple[int, dict]:
    """Rank and traces of each class pair ``(nu, rho)`` acting on the image."""
    k, m, d = data.k, data.m, data.dim
    if data.reduced.shape[1] == 0:
        return 0, {(nu, rho): Fraction(0) for nu in partitions(k) for rho in partitions(m)}
    rows, pivots = integer_rref(data.reduced)
    r = len(rows)
    # a representative original column for each reduced pivot column
    rep: dict[int, int] = {}
    for o in range(len(data.col_index)):
        j = int(data.col_index[o])
        if j >= 0 and j not in rep:
            rep[j] = o
    traces = {}
    for nu in partitions(k):
        for rho in partitions(m):
            sigma = _class_rep(nu, 0) + _class_rep(rho, k)
            tr = Fraction(0)
            for i in range(r):
                o = rep[pivots[i]]
                a_idx, c = divmod(o, d)
                a = data.assignment(a_idx)
                img = [a[sigma[j]] for j in range(data.n)]  # (a o sigma)_j = a_{sigma(j)}
                o2 = data.assignment_index(img) * d + c
                j2 = int(data.col_index[o2])
                if j2 < 0:
                    continue
                tr += Fraction(data.col_scale[o2], data.col_scale[o]) * rows[i][j2]
            traces[(nu, rho)] = tr
    return r, traces


def cocharacter(alg: GradedAlgebra, k: int, m: int, cap: int = DEFAULT_CHARACTER_CAP) -> SectorReport:
    """Multiplicities ``m_{lambda,mu}`` of the ``S_k x S_m`` character of ``P_{k,m}(L)``."""
    if k + m > cap:
        raise CapExceeded(f"character computation in degree {k + m} exceeds the cap {cap}")
    if alg.dim == 0:
        return SectorReport(k, m, 0, {}, 0)
    data = evaluation_data(alg, k, m, cap=cap)
    r, traces = class_traces(data)
    mults = {}
    for lam in partitions(k):
        for mu in partitions(m):
            s = sum(traces[(nu, rho)] * mn_character(lam, nu) * mn_character(mu, rho)
                    / (z_value(nu) * z_value(rho)) for nu in partitions(k) for rho in partitions(m))
            if s.denominator != 1 or s < 0:
                raise InternalCheckError(f"multiplicity of ({lam}, {mu}) came out as {s}")
            if s:
                mults[(lam, mu)] = int(s)
    total = sum(v * hook_dimension(lam) * hook_dimension(mu) for (lam, mu), v in mults.items())
    if total != r:
        raise InternalCheckError(f"sum of m * d_lambda * d_mu = {total} differs from the codimension {r}")
    return SectorReport(k, m, r, mults, sum(mults.values()))


# ---------------------------------------------------------------------------
# tables


def _sector_job(args):
    alg, k, m, with_cochar, cap, ccap = args
    if with_cochar:
        return cocharacter(alg, k, m, ccap)
    return SectorReport(k, m, partial_codimension(alg, k, m, cap))


def sector_reports(alg: GradedAlgebra, n: int, *, cocharacters: bool = False, cap: int = DEFAULT_DEGREE_CAP,
                   char_cap: int = DEFAULT_CHARACTER_CAP, workers: int = 1) -> list[SectorReport]:
    """Reports for sectors ``k = 0..n`` (results in ``k`` order for any worker count)."""
    if n > cap:
        raise CapExceeded(f"degree {n} exceeds the cap {cap}")
    jobs = [(alg, k, n - k, cocharacters, cap, char_cap) for k in range(n + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_sector_job, jobs))
    return [_sector_job(j) for j in jobs]


@dataclass(frozen=True)
class CodimRow:
    n: int
    sectors: tuple
    c_gr: int
    l_gr: int | None
    root: str

    def to_json(self) -> dict:
        out = {"n": self.n, "c_gr": str(self.c_gr), "root": self.root,
               "sectors": [s.to_json() for s in self.sectors]}
        if self.l_gr is not None:
            out["l_gr"] = str(self.l_gr)
        return out


def nth_root(c: int, n: int, places: int = 6) -> str:
    """``c^(1/n)`` as a decimal string (decimal arithmetic, display only)."""
    if c <= 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = 40
        val = Decimal(c) ** (Decimal(1) / Decimal(n))
        return str(val.quantize(Decimal(1).scaleb(-places)))


def graded_codimension(alg: GradedAlgebra, n: int, *, cocharacters: bool = False,
                       cap: int = DEFAULT_DEGREE_CAP, char_cap: int = DEFAULT_CHARACTER_CAP,
                       workers: int = 1) -> CodimRow:
    """``c_n^gr = sum_k binom(n, k) c_{k,n-k}`` with the sector data."""
    secs = tuple(sector_reports(alg, n, cocharacters=cocharacters, cap=cap, char_cap=char_cap, workers=workers))
    c = sum(comb(n, s.k) * s.codim for s in secs)
    l_gr = sum(s.colength for s in secs) if cocharacters else None
    return CodimRow(n, secs, c, l_gr, nth_root(c, n))


@dataclass(frozen=True)
class CodimTable:
    algebra: str
    rows: tuple

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "rows": [r.to_json() for r in self.rows]}


def codim_table(alg: GradedAlgebra, n_max: int, *, cochar_max: int = 0, cap: int = DEFAULT_DEGREE_CAP,
                char_cap: int = DEFAULT_CHARACTER_CAP, workers: int = 1) -> CodimTable:
    """Rows ``n = 1..n_max``; cocharacters are included for ``n <= cochar_max``."""
    rows = tuple(graded_codimension(alg, n, cocharacters=n <= cochar_max, cap=cap, char_cap=char_cap,
                                    workers=workers) for n in range(1, n_max + 1))
    return CodimTable(alg.name, rows)


def colength(sectors: Sequence[SectorReport], dim: int | None = None) -> int:
    """``l_n^gr``, the total multiplicity; with ``dim`` also checks ``l <= d (n+1)^(d^2+d+1)``."""
    if any(s.colength is None for s in sectors):
        raise ValueError("cocharacters are needed for every sector")
    total = sum(s.colength for s in sectors)
    if dim is not None and sectors:
        n = sectors[0].k + sectors[0].m
        if total > colength_bound(dim, n):
            raise InternalCheckError(f"colength {total} exceeds the polynomial bound")
    return total


def colength_bound(d: int, n: int) -> int:
    return d * (n + 1) ** (d * d + d + 1)


def root_sequence(table: CodimTable) -> list[dict]:
    return [{"n": r.n, "c_gr": str(r.c_gr), "root": r.root} for r in table.rows]


# ---------------------------------------------------------------------------
# checks against nilpotent ideal data


def vanishing_violations(report: SectorReport, d0: int, d1: int, m_hat: int) -> list[tuple]:
    """Pairs with nonzero multiplicity having more than ``m_hat`` cells below row ``d0`` (resp. ``d1``)."""
    return [(lam.parts, mu.parts) for (lam, mu), v in report.multiplicities.items()
            if v and (lam.cells_below(d0) > m_hat or mu.cells_below(d1) > m_hat)]


def height_violations(report: SectorReport, d: int) -> list[tuple]:
    return [(lam.parts, mu.parts) for (lam, mu), v in report.multiplicities.items()
            if v and (lam.height > d or mu.height > d)]


def admissible_dimension_sum(k: int, m: int, d: int, d0: int, d1: int, m_hat: int) -> int:
    """``sum d_lambda d_mu`` over pairs of height at most ``d`` obeying the cells-below limits."""
    left = sum(hook_dimension(lam) for lam in partitions(k) if lam.height <= d and lam.cells_below(d0) <= m_hat)
    right = sum(hook_dimension(mu) for mu in partitions(m) if mu.height <= d and mu.cells_below(d1) <= m_hat)
    return left * right


def upper_bound(k: int, m: int, d: int, d0: int, d1: int, m_hat: int) -> int:
    """Right-hand side ``d (n+1)^(d^2+d+1) * sum d_lambda d_mu`` of the checked upper bound."""
    return colength_bound(d, k + m) * admissible_dimension_sum(k, m, d, d0, d1, m_hat)


def upper_bound_check(codims: dict, d: int, d0: int, d1: int, m_hat: int) -> list[dict]:
    """Compare every ``c_{k,m}`` in ``codims`` with the bound (asserting ``<=`` only)."""
    out = []
    for (k, m), c in sorted(codims.items()):
        b = upper_bound(k, m, d, d0, d1, m_hat)
        out.append({"k": k, "m": m, "codim": str(c), "bound": str(b), "holds": c <= b,
                    "margin": str(b - c)})
    return out
