"""Upper triangular matrices, their involutions, and the block superalgebras S(t).

Everything here is built on :mod:`pi_codim.algebra`.  Matrix units of
``UT_t`` are indexed 1-based as ``(i, j)`` with ``i <= j``; the basis order is
lexicographic in ``(i, j)``.

An element of ``S(t)`` is a 2x2 block matrix ``(x, y; z, -x*)`` over
``R = UT_t`` with ``y* = y`` and ``z* = -z``.  Its basis is, in order: the even
vectors ``diag(e_ij, -e_ij*)``, then a basis of the symmetric part ``R+`` placed
in the upper-right block, then a basis of the skew part ``R-`` placed in the
lower-left block.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .algebra import (EVEN, ODD, AlgebraError, Element, GradedAlgebra, Subspace, _sparse_add, _sparse_mul,
                      check_associative, nilpotency_index, power_series)
from .linalg import Matrix, SpanSolver, rank


class InvolutionKind(str, Enum):
    ORTHOGONAL = "orth"
    SYMPLECTIC = "sympl"

    @classmethod
    def parse(cls, value) -> "InvolutionKind":
        if isinstance(value, cls):
            return value
        v = str(value).strip().lower()
        if v in ("orth", "orthogonal", "o"):
            return cls.ORTHOGONAL
        if v in ("sympl", "symplectic", "s", "symp"):
            return cls.SYMPLECTIC
        raise ValueError(f"unknown involution kind {value!r}")


# ---------------------------------------------------------------------------
# UT_t


def ut_units(t: int) -> list[tuple[int, int]]:
    """Matrix units ``(i, j)``, ``1 <= i <= j <= t``, in basis order."""
    return [(i, j) for i in range(1, t + 1) for j in range(i, t + 1)]


def build_ut(t: int) -> GradedAlgebra:
    """The associative algebra ``UT_t(F)``, all basis vectors even, degree ``j - i``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    units = ut_units(t)
    index = {u: k for k, u in enumerate(units)}
    table = {}
    for a, (i, j) in enumerate(units):
        for l in range(j, t + 1):
            table[(a, index[(j, l)])] = [(index[(i, l)], 1)]
    return GradedAlgebra(f"UT({t})", [EVEN] * len(units), table, [j - i for i, j in units],
                         labels=[f"e[{i},{j}]" for i, j in units], construction={"family": "UT", "t": t})


def involution_images(t: int, kind) -> list[tuple[int, int]]:
    """For each basis unit, ``(image index, sign)`` under the chosen involution.

    Orthogonal: ``e_ij -> e_{t+1-j, t+1-i}``.  Symplectic (even t): the same
    reflection conjugated by ``D = diag(1,..,1,-1,..,-1)``, which multiplies
    ``e_ij`` by ``d_i d_j``.
    """
    kind = InvolutionKind.parse(kind)
    if t < 1:
        raise ValueError("t must be at least 1")
    if kind is InvolutionKind.SYMPLECTIC and t % 2:
        raise ValueError("the symplectic involution needs even t")
    half = t // 2
    units = ut_units(t)
    index = {u: k for k, u in enumerate(units)}
    out = []
    for i, j in units:
        img = index[(t + 1 - j, t + 1 - i)]
        sign = 1
        if kind is InvolutionKind.SYMPLECTIC:
            sign = (1 if i <= half else -1) * (1 if j <= half else -1)
        out.append((img, sign))
    return out


def involution(t: int, kind) -> Matrix:
    """Matrix of the involution on ``UT_t``; column ``k`` holds the image of basis unit ``k``."""
    images = involution_images(t, kind)
    d = len(images)
    entries = [0] * (d * d)
    for k, (img, sign) in enumerate(images):
        entries[img * d + k] = sign
    return Matrix(d, d, entries)


def _star_columns(star: Matrix) -> list[dict[int, Fraction]]:
    return [{i: star[i, k] for i in range(star.rows) if star[i, k]} for k in range(star.cols)]


def _apply(cols: Sequence[Mapping[int, Fraction]], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for k, c in v.items():
        for i, a in cols[k].items():
            out[i] = out.get(i, 0) + c * a
    return {i: c for i, c in out.items() if c}


def find_involution_violation(r: GradedAlgebra, star: Matrix):
    """First basis pair violating ``(xy)* = y* x*`` or index violating ``x** = x``; ``None`` if none."""
    cols = _star_columns(star)
    for k in range(r.dim):
        if _apply(cols, cols[k]) != {k: 1}:
            return ("square", k)
    for a in range(r.dim):
        for b in range(r.dim):
            lhs = _apply(cols, dict(r.table.get((a, b), ())))
            rhs = _sparse_mul(r.table, cols[b], cols[a])
            if lhs != rhs:
                return ("anti-multiplicative", a, b)
    return None


# ---------------------------------------------------------------------------
# block algebras


def build_Q(r: GradedAlgebra, name: str | None = None) -> GradedAlgebra:
    """``M_2(R)`` with diagonal blocks even and off-diagonal blocks odd (associative).

    Basis index ``block * dim R + k`` with blocks ordered 11, 12, 21, 22.
    """
    d = r.dim
    blocks = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = {}
    for bi, (p, q) in enumerate(blocks):
        for bj, (q2, s) in enumerate(blocks):
            if q != q2:
                continue
            bo = blocks.index((p, s))
            for (a, b), prod in r.table.items():
                table[(bi * d + a, bj * d + b)] = [(bo * d + k, c) for k, c in prod]
    parity = [(p + q) % 2 for p, q in blocks for _ in range(d)]
    zdeg = None if r.z_degree is None else list(r.z_degree) * 4
    labels = [f"{lab}@{p + 1}{q + 1}" for p, q in blocks for lab in r.labels]
    return GradedAlgebra(name or f"M2({r.name})", parity, table, zdeg, labels=labels)


def _primitive(v: dict[int, Fraction]) -> dict[int, Fraction]:
    den = 1
    for c in v.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {k: int(c * den) for k, c in v.items()}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    first = ints[min(ints)]
    if first < 0:
        g = -g
    return {k: Fraction(x, g) for k, x in ints.items()}


def _symmetric_basis(dim: int, cols, sign: int) -> list[dict[int, Fraction]]:
    """Basis of ``{v : v* = sign v}`` built from ``e_k + sign e_k*`` in index order."""
    basis: list[dict[int, Fraction]] = []
    rows: list[list[Fraction]] = []
    for k in range(dim):
        v = _sparse_add({k: Fraction(1)}, cols[k], sign)
        if not v:
            continue
        cand = [v.get(i, Fraction(0)) for i in range(dim)]
        trial = Matrix.from_rows(rows + [cand], dim)
        if rank(trial) == len(rows) + 1:
            rows.append(cand)
            basis.append(_primitive(v))
    return basis


@dataclass
class BlockSuperalgebra:
    """The Lie superalgebra ``{(x, y; z, -x*)}`` over an involutive algebra, with block bookkeeping."""

    r: GradedAlgebra
    star: Matrix
    algebra: GradedAlgebra
    q: GradedAlgebra
    embedding: list[dict[int, Fraction]]
    plus_basis: list[dict[int, Fraction]]
    minus_basis: list[dict[int, Fraction]]
    _solvers: tuple = field(repr=False, default=())

    @property
    def n_even(self) -> int:
        return self.r.dim

    def star_of(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        return _apply(_star_columns(self.star), v)

    def element(self, x: Mapping | None = None, y: Mapping | None = None, z: Mapping | None = None) -> Element:
        """Element with blocks ``(x, y; z, -x*)``; ``y`` must be symmetric and ``z`` skew."""
        x = {k: Fraction(c) for k, c in (x or {}).items() if c}
        y = {k: Fraction(c) for k, c in (y or {}).items() if c}
        z = {k: Fraction(c) for k, c in (z or {}).items() if c}
        d = self.r.dim
        coords: dict[int, Fraction] = dict(x)
        for off, vec, solver, tag in ((d, y, self._solvers[0], "y"), (d + len(self.plus_basis), z,
                                                                     self._solvers[1], "z")):
            if not vec:
                continue
            sol = solver.solve([vec.get(i, Fraction(0)) for i in range(d)]) if solver else None
            if sol is None:
                raise AlgebraError(f"block {tag} is not in the required (anti)symmetric part")
            coords.update({off + a: c for a, c in enumerate(sol) if c})
        return Element(self.algebra, coords)

    def blocks(self, e: Element) -> tuple[dict, dict, dict, dict]:
        """``(A, B, C, D)`` blocks of an element as sparse vectors over ``R``."""
        v = self.embed(e)
        d = self.r.dim
        parts = [{} for _ in range(4)]
        for k, c in v.items():
            parts[k // d][k % d] = c
        return tuple(parts)

    def embed(self, e: Element) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for a, c in e.support.items():
            for k, x in self.embedding[a].items():
                out[k] = out.get(k, 0) + c * x
        return {k: c for k, c in out.items() if c}


def involutive_superalgebra(r: GradedAlgebra, star: Matrix, *, name: str | None = None, check: bool = True,
                            labels: tuple[Sequence[str], Sequence[str], Sequence[str]] | None = None,
                            construction: Mapping | None = None) -> BlockSuperalgebra:
    """Lie superalgebra of blocks ``(x, y; z, -x*)`` with ``x`` in ``R``, ``y* = y``, ``z* = -z``.

    ``r`` must be associative with every basis vector even, ``star`` an
    involution of it (both are checked when ``check`` is set).
    """
    if any(r.parity):
        raise AlgebraError("the base algebra must be purely even")
    if check:
        check_associative(r)
        bad = find_involution_violation(r, star)
        if bad:
            raise AlgebraError(f"not an involution: {bad}")
    d = r.dim
    cols = _star_columns(star)
    plus = _symmetric_basis(d, cols, 1)
    minus = _symmetric_basis(d, cols, -1)
    q = build_Q(r)
    emb: list[dict[int, Fraction]] = []
    for k in range(d):
        v = {k: Fraction(1)}
        for i, c in cols[k].items():
            v[3 * d + i] = -c
        emb.append(v)
    emb += [{d + i: c for i, c in v.items()} for v in plus]
    emb += [{2 * d + i: c for i, c in v.items()} for v in minus]
    parity = [EVEN] * d + [ODD] * (len(plus) + len(minus))
    zdeg = None
    if r.z_degree is not None:
        zdeg = []
        for v in emb:
            degs = {r.z_degree[k % d] for k in v}
            if len(degs) != 1:
                zdeg = None
                break
            zdeg.append(degs.pop())
    solvers = tuple(SpanSolver(Matrix.from_rows([[b.get(i, Fraction(0)) for i in range(d)] for b in basis], d))
                    if basis else None for basis in (plus, minus))
    table = {}
    for a in range(len(emb)):
        for b in range(len(emb)):
            ab = _sparse_mul(q.table, emb[a], emb[b])
            ba = _sparse_mul(q.table, emb[b], emb[a])
            sign = 1 if parity[a] and parity[b] else -1
            prod = _sparse_add(ab, ba, sign)
            if not prod:
                continue
            table[(a, b)] = _decompose(prod, d, cols, solvers, len(plus))
    if labels is None:
        labels = ([f"D({lab})" for lab in r.labels], [f"U{k}" for k in range(len(plus))],
                  [f"L{k}" for k in range(len(minus))])
    alg = GradedAlgebra(name or f"S({r.name})", parity, table, zdeg, super_lie=True,
                        labels=list(labels[0]) + list(labels[1]) + list(labels[2]), check=check,
                        construction=construction)
    return BlockSuperalgebra(r, star, alg, q, emb, plus, minus, solvers)


def _decompose(v: dict[int, Fraction], d: int, cols, solvers, nplus: int) -> dict[int, Fraction]:
    parts = [{} for _ in range(4)]
    for k, c in v.items():
        parts[k // d][k % d] = c
    x = parts[0]
    expected_d = {i: -c for i, c in _apply(cols, x).items()}
    if parts[3] != expected_d:
        raise AlgebraError("bracket left the subspace: lower-right block is not -x*")
    out = dict(x)
    for off, vec, solver in ((d, parts[1], solvers[0]), (d + nplus, parts[2], solvers[1])):
        if not vec:
            continue
        sol = solver.solve([vec.get(i, Fraction(0)) for i in range(d)]) if solver else None
        if sol is None:
            raise AlgebraError("bracket left the subspace: off-diagonal block has the wrong symmetry")
        out.update({off + a: c for a, c in enumerate(sol) if c})
    return out


# ---------------------------------------------------------------------------
# S(t)


@dataclass(frozen=True)
class SNamedElements:
    """Distinguished elements of ``S(t)``; lists are indexed from 0 for ``i = 1..m``."""

    t: int
    kind: InvolutionKind
    X: tuple
    Y: tuple
    Z: tuple
    E: Mapping
    Ibig: Element
    Y0: Element
    b: Element | None = None

    @property
    def m(self) -> int:
        return self.t // 2

    def all_items(self) -> list[tuple[str, Element]]:
        out = [(f"X{i + 1}", x) for i, x in enumerate(self.X)]
        out += [(f"Y{i + 1}", x) for i, x in enumerate(self.Y)]
        out += [(f"Z{i + 1}", x) for i, x in enumerate(self.Z)]
        out += [(f"E{i},{j}", x) for (i, j), x in sorted(self.E.items())]
        out += [("I", self.Ibig), ("Y0", self.Y0)]
        if self.b is not None:
            out.append(("b", self.b))
        return out


_MODEL_CACHE: dict[tuple[int, InvolutionKind], BlockSuperalgebra] = {}


def s_model(t: int, kind="orth") -> BlockSuperalgebra:
    """Block model of ``S(t)``: the algebra plus block embedding (cached)."""
    kind = InvolutionKind.parse(kind)
    if t < 2:
        raise ValueError("S(t) needs t >= 2")
    if kind is InvolutionKind.SYMPLECTIC and t % 2:
        raise ValueError("the symplectic involution needs even t")
    key = (t, kind)
    if key not in _MODEL_CACHE:
        r = build_ut(t)
        star = involution(t, kind)
        units = ut_units(t)
        # basis vectors of R+ / R- are e_u +- e_u* for the listed representatives u
        tmp = involutive_superalgebra(r, star, check=False)
        plus_lab = [_sym_label("Y", v, units) for v in tmp.plus_basis]
        minus_lab = [_sym_label("Z", v, units) for v in tmp.minus_basis]
        even_lab = [f"E[{i},{j}]" for i, j in units]
        _MODEL_CACHE[key] = involutive_superalgebra(
            r, star, name=spec_string(t, kind), check=True, labels=(even_lab, plus_lab, minus_lab),
            construction={"family": "S", "t": t, "inv": kind.value})
    return _MODEL_CACHE[key]


def _sym_label(prefix: str, v: Mapping[int, Fraction], units) -> str:
    i, j = units[min(v)]
    return f"{prefix}[{i},{j}]"


def named_elements(model: BlockSuperalgebra, t: int, kind) -> SNamedElements:
    kind = InvolutionKind.parse(kind)
    units = ut_units(t)
    idx = {u: k for k, u in enumerate(units)}
    m = t // 2

    def unit(i, j):
        return {idx[(i, j)]: Fraction(1)}

    def ustar(i, j):
        return model.star_of(unit(i, j))

    X, Y, Z = [], [], []
    for i in range(1, m + 1):
        diff = _sparse_add(unit(i, i), ustar(i, i), -1)
        X.append(model.element(x=diff))
        Y.append(model.element(y=_sparse_add(unit(i, i), ustar(i, i))))
        Z.append(model.element(z=diff))
    E = {(i, j): model.element(x=unit(i, j)) for (i, j) in units}
    ident = {idx[(i, i)]: Fraction(1) for i in range(1, t + 1)}
    Ibig = model.element(x=ident)
    Y0 = model.element(y=ident)
    b = model.element(y=unit(m + 1, m + 1)) if t % 2 else None
    return SNamedElements(t, kind, tuple(X), tuple(Y), tuple(Z), E, Ibig, Y0, b)


def build_S(t: int, kind="orth") -> tuple[GradedAlgebra, SNamedElements]:
    """The Lie superalgebra ``S(t)`` for the orthogonal or (even t) symplectic involution."""
    model = s_model(t, kind)
    return model.algebra, named_elements(model, t, kind)


def s_parameters(alg: GradedAlgebra) -> tuple[int, InvolutionKind]:
    """Recover ``(t, kind)`` from the construction metadata of an ``S(t)`` algebra."""
    meta = alg.construction or {}
    if meta.get("family") != "S":
        raise ValueError(f"{alg.name} was not built as S(t)")
    return int(meta["t"]), InvolutionKind.parse(meta["inv"])


def to_matrix(model: BlockSuperalgebra, e: Element, t: int) -> np.ndarray:
    """Dense ``2t x 2t`` object array of Fractions for an element of ``S(t)``."""
    units = ut_units(t)
    out = np.full((2 * t, 2 * t), Fraction(0), dtype=object)
    for bi, part in enumerate(model.blocks(e)):
        ro, co = (bi // 2) * t, (bi % 2) * t
        for k, c in part.items():
            i, j = units[k]
            out[ro + i - 1, co + j - 1] = c
    return out


def z_graded_ideal(S: GradedAlgebra, t: int | None = None) -> Subspace:
    """Nilpotent ideal of finite codimension: positive degrees, plus ``b`` when t is odd."""
    pt, kind = s_parameters(S)
    if t is not None and t != pt:
        raise ValueError(f"algebra was built with t={pt}, not {t}")
    t = pt
    gens = [S.basis(k) for k in range(S.dim) if S.z_degree[k] >= 1]
    if t % 2:
        gens.append(named_elements(s_model(t, kind), t, kind).b)
    ideal = Subspace.span(S, gens)
    if not ideal.is_ideal():
        raise AlgebraError("constructed subspace is not an ideal")
    if nilpotency_index(ideal) is None:
        raise AlgebraError("constructed ideal is not nilpotent")
    return ideal


@dataclass(frozen=True)
class IdealData:
    """Codimensions of a nilpotent ideal in the even/odd parts and its nilpotency data."""

    d0: int
    d1: int
    index_all: int
    index_left: int

    @property
    def m_hat(self) -> int:
        """Largest ``m`` with ``I^m != 0`` (so ``I^(m+1) = 0``)."""
        return self.index_all - 1


def ideal_data(S: GradedAlgebra) -> IdealData:
    ideal = z_graded_ideal(S)
    n0 = S.parity.count(EVEN)
    n1 = S.dim - n0
    return IdealData(n0 - ideal.dim_parity(EVEN), n1 - ideal.dim_parity(ODD),
                     nilpotency_index(ideal, "all"), nilpotency_index(ideal, "left"))


# ---------------------------------------------------------------------------
# builder spec strings

_SPEC_RE = re.compile(r"^\s*S\s*\(\s*t\s*=\s*(\d+)\s*(?:,\s*inv\s*=\s*([a-zA-Z]+)\s*)?\)\s*$")


def spec_string(t: int, kind) -> str:
    return f"S(t={t},inv={InvolutionKind.parse(kind).value})"


def parse_spec(text: str) -> tuple[int, InvolutionKind]:
    """Parse ``"S(t=4,inv=orth)"``; the involution defaults to orthogonal."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse algebra spec {text!r}; expected e.g. 'S(t=4,inv=orth)'")
    return int(m.group(1)), InvolutionKind.parse(m.group(2) or "orth")


def build_from_spec(text: str) -> tuple[GradedAlgebra, SNamedElements]:
    return build_S(*parse_spec(text))


def power_indices(sub: Subspace) -> dict[str, int | None]:
    return {"all": nilpotency_index(sub, "all"), "left": nilpotency_index(sub, "left"),
            "chain_dims": [s.dim for s in power_series(sub, "all")]}
