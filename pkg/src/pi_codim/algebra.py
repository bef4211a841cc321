"""Finite-dimensional Z/2-graded algebras given by structure constants.

A :class:`GradedAlgebra` stores a sparse multiplication table on a basis whose
vectors carry a parity (0 even, 1 odd) and optionally a non-negative integer
degree.  For Lie superalgebras the product *is* the bracket.  Elements and
subspaces are immutable; every computation is exact.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, as_scalar, integer_rref

EVEN, ODD = 0, 1


class AlgebraError(ValueError):
    pass


class NonAssociativeError(AlgebraError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails on basis triple {triple}")


def _sparse_mul(table, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
    acc: dict[int, Fraction] = {}
    for i, x in u.items():
        for j, y in v.items():
            prod = table.get((i, j))
            if prod:
                xy = x * y
                for k, c in prod:
                    acc[k] = acc.get(k, 0) + xy * c
    return {k: c for k, c in acc.items() if c}


def _sparse_add(u, v, s=1) -> dict[int, Fraction]:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, 0) + s * c
    return {k: c for k, c in out.items() if c}


class GradedAlgebra:
    """Z/2-graded algebra with a sparse structure-constant table.

    ``table[(i, j)]`` lists ``(k, c)`` pairs meaning ``b_i * b_j = sum c b_k``.
    With ``super_lie=True`` the product is treated as a super bracket and the
    super anticommutativity and super Jacobi identities are verified on all
    basis pairs/triples unless ``check=False``.
    """

    def __init__(self, name: str, parity: Sequence[int], table: Mapping, z_degree: Sequence[int] | None = None,
                 *, super_lie: bool = False, labels: Sequence[str] | None = None, check: bool = True,
                 construction: Mapping | None = None):
        self.name = name
        self.parity = tuple(int(p) for p in parity)
        if any(p not in (EVEN, ODD) for p in self.parity):
            raise AlgebraError("parities must be 0 or 1")
        self.dim = len(self.parity)
        self.z_degree = None if z_degree is None else tuple(int(z) for z in z_degree)
        if self.z_degree is not None and (len(self.z_degree) != self.dim or min(self.z_degree, default=0) < 0):
            raise AlgebraError("z_degree must list a non-negative degree per basis vector")
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(self.dim))
        self.is_super_lie = bool(super_lie)
        self.construction = dict(construction) if construction else None
        norm = {}
        for (i, j), entries in table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise AlgebraError(f"table index {(i, j)} out of range")
            acc: dict[int, Fraction] = {}
            items = entries.items() if isinstance(entries, Mapping) else entries
            for k, c in items:
                if not 0 <= k < self.dim:
                    raise AlgebraError(f"table value index {k} out of range")
                acc[k] = acc.get(k, 0) + as_scalar(c)
            cleaned = tuple(sorted((k, c) for k, c in acc.items() if c))
            if cleaned:
                norm[(i, j)] = cleaned
        self.table = norm
        self._check_grading()
        if check and self.is_super_lie:
            bad = find_anticommutativity_violation(self)
            if bad:
                raise AlgebraError(f"super anticommutativity fails on basis pair {bad}")
            bad = find_jacobi_violation(self)
            if bad:
                raise AlgebraError(f"super Jacobi identity fails on basis triple {bad}")

    def _check_grading(self):
        for (i, j), prod in self.table.items():
            p = (self.parity[i] + self.parity[j]) % 2
            for k, _ in prod:
                if self.parity[k] != p:
                    raise AlgebraError(f"product of basis {i},{j} is not of parity {p}")
                if self.z_degree is not None and self.z_degree[k] != self.z_degree[i] + self.z_degree[j]:
                    raise AlgebraError(f"product of basis {i},{j} leaves degree {self.z_degree[i] + self.z_degree[j]}")

    # -- identity -------------------------------------------------------
    def _key(self):
        return (self.name, self.parity, self.z_degree, tuple(sorted(self.table.items())))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GradedAlgebra({self.name!r}, dim={self.dim}, even={self.parity.count(0)}, odd={self.parity.count(1)})"

    # -- elements -------------------------------------------------------
    def basis(self, i: int) -> "Element":
        return Element(self, {i: Fraction(1)})

    def basis_elements(self) -> list["Element"]:
        return [self.basis(i) for i in range(self.dim)]

    def zero(self) -> "Element":
        return Element(self, {})

    def element(self, coords: Sequence) -> "Element":
        if len(coords) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates")
        return Element(self, {i: as_scalar(c) for i, c in enumerate(coords) if c})

    def indices_of_parity(self, p: int) -> list[int]:
        return [i for i, q in enumerate(self.parity) if q == p]

    def structure_matrix(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), ())

    def mul(self, a: "Element", b: "Element") -> "Element":
        return bracket(a, b)


class Element:
    """Coordinate vector in the basis of a :class:`GradedAlgebra` (sparse, immutable)."""

    __slots__ = ("algebra", "_data")

    def __init__(self, algebra: GradedAlgebra, data: Mapping[int, Fraction]):
        self.algebra = algebra
        self._data = {int(k): as_scalar(v) for k, v in data.items() if v}

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(self._data.get(i, Fraction(0)) for i in range(self.algebra.dim))

    @property
    def support(self) -> dict[int, Fraction]:
        return dict(self._data)

    def __getitem__(self, i: int) -> Fraction:
        return self._data.get(i, Fraction(0))

    def _same(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError("expected an Element")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, _sparse_add(self._data, other._data))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, _sparse_add(self._data, other._data, -1))

    def __neg__(self) -> "Element":
        return Element(self.algebra, {k: -c for k, c in self._data.items()})

    def __mul__(self, c) -> "Element":
        c = as_scalar(c)
        return Element(self.algebra, {k: c * v for k, v in self._data.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (other.algebra is self.algebra or other.algebra == self.algebra) and self._data == other._data

    def __hash__(self):
        return hash(tuple(sorted(self._data.items())))

    def __bool__(self) -> bool:
        return bool(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def __repr__(self) -> str:
        if not self._data:
            return "0"
        labels = self.algebra.labels
        return " + ".join(f"{c}*{labels[k]}" for k, c in sorted(self._data.items()))

    def even_part(self) -> "Element":
        par = self.algebra.parity
        return Element(self.algebra, {k: c for k, c in self._data.items() if par[k] == EVEN})

    def odd_part(self) -> "Element":
        par = self.algebra.parity
        return Element(self.algebra, {k: c for k, c in self._data.items() if par[k] == ODD})

    def has_parity(self, p: int) -> bool:
        """True when every basis vector in the support has parity ``p`` (always true for 0)."""
        par = self.algebra.parity
        return all(par[k] == p for k in self._data)

    @property
    def parity(self) -> int | None:
        """0 or 1 for a nonzero homogeneous element, ``None`` otherwise."""
        ps = {self.algebra.parity[k] for k in self._data}
        return ps.pop() if len(ps) == 1 else None


def bracket(a: Element, b: Element) -> Element:
    """Bilinear product of two elements through the structure constants."""
    a._same(b)
    return Element(a.algebra, _sparse_mul(a.algebra.table, a._data, b._data))


def supercommutator(a: Element, b: Element) -> Element:
    """``ab - (-1)^{|a||b|} ba`` in an associative superalgebra, extended bilinearly."""
    out = a.algebra.zero()
    for x in (a.even_part(), a.odd_part()):
        for y in (b.even_part(), b.odd_part()):
            if x.is_zero() or y.is_zero():
                continue
            sign = -1 if (x.parity * y.parity) % 2 == 0 else 1
            out = out + bracket(x, y) + sign * bracket(y, x)
    return out


# ---------------------------------------------------------------------------
# identity checks on basis vectors


def find_associativity_violation(alg: GradedAlgebra):
    t = alg.table
    for i, j, k in product(range(alg.dim), repeat=3):
        left = _sparse_mul(t, _sparse_mul(t, {i: 1}, {j: 1}), {k: 1})
        right = _sparse_mul(t, {i: 1}, _sparse_mul(t, {j: 1}, {k: 1}))
        if left != right:
            return (i, j, k)
    return None


def find_anticommutativity_violation(alg: GradedAlgebra):
    t, par = alg.table, alg.parity
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            s = -1 if (par[i] * par[j]) % 2 == 0 else 1
            xy = dict(t.get((i, j), ()))
            yx = dict(t.get((j, i), ()))
            # [x,y] + (-1)^{|x||y|} [y,x] == 0
            if _sparse_add(xy, yx, -s):
                return (i, j)
    return None


def find_jacobi_violation(alg: GradedAlgebra):
    """Check [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] on all basis triples."""
    t, par, d = alg.table, alg.parity, alg.dim
    prods = {k: dict(v) for k, v in t.items()}
    for i in range(d):
        for j in range(d):
            xy = prods.get((i, j), {})
            sgn = -1 if par[i] * par[j] % 2 else 1
            for k in range(d):
                yz = prods.get((j, k), {})
                xz = prods.get((i, k), {})
                lhs = _sparse_mul(t, {i: 1}, yz) if yz else {}
                r1 = _sparse_mul(t, xy, {k: 1}) if xy else {}
                r2 = _sparse_mul(t, {j: 1}, xz) if xz else {}
                if _sparse_add(lhs, _sparse_add(r1, r2, sgn), -1):
                    return (i, j, k)
    return None


def check_associative(alg: GradedAlgebra) -> None:
    bad = find_associativity_violation(alg)
    if bad:
        raise NonAssociativeError(bad)


def superbracket_algebra(assoc: GradedAlgebra, *, check: bool = True, name: str | None = None) -> GradedAlgebra:
    """The same graded space with the product replaced by supercommutators."""
    if check:
        check_associative(assoc)
    t, par = assoc.table, assoc.parity
    table = {}
    for i in range(assoc.dim):
        for j in range(assoc.dim):
            s = -1 if (par[i] * par[j]) % 2 == 0 else 1
            v = _sparse_add(dict(t.get((i, j), ())), dict(t.get((j, i), ())), s)
            if v:
                table[(i, j)] = v
    return GradedAlgebra(name or f"[{assoc.name}]", par, table, assoc.z_degree, super_lie=True,
                         labels=assoc.labels, check=check)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of an algebra held as a reduced echelon basis."""

    __slots__ = ("algebra", "rows", "pivots")

    def __init__(self, algebra: GradedAlgebra, rows: Sequence[Sequence[Fraction]], pivots: Sequence[int]):
        self.algebra = algebra
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, algebra: GradedAlgebra, elements: Iterable[Element]) -> "Subspace":
        vecs = [e.coords for e in elements if not e.is_zero()]
        return cls._from_vectors(algebra, vecs)

    @classmethod
    def _from_vectors(cls, algebra, vecs) -> "Subspace":
        if not vecs:
            return cls(algebra, [], [])
        m = Matrix.from_rows(vecs, algebra.dim)
        rows, pivots = integer_rref(m.integer_rows())
        return cls(algebra, rows, pivots)

    @classmethod
    def whole(cls, algebra: GradedAlgebra) -> "Subspace":
        return cls.span(algebra, algebra.basis_elements())

    @classmethod
    def zero(cls, algebra: GradedAlgebra) -> "Subspace":
        return cls(algebra, [], [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.algebra.dim - self.dim

    def basis(self) -> list[Element]:
        return [self.algebra.element(r) for r in self.rows]

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.algebra == other.algebra and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.algebra.name})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace._from_vectors(self.algebra, list(self.rows) + list(other.rows))

    def contains(self, x: Element) -> bool:
        v = list(x.coords)
        for r, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, r)]
        return not any(v)

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(e) for e in other.basis())

    def dim_parity(self, p: int) -> int:
        """Dimension of the intersection with the parity-``p`` component (homogeneous subspaces)."""
        return sum(1 for piv in self.pivots if self.algebra.parity[piv] == p)

    def is_graded(self) -> bool:
        return all(self.contains(e.even_part()) and self.contains(e.odd_part()) for e in self.basis())

    def bracket(self, other: "Subspace") -> "Subspace":
        """Span of all products ``[u, v]`` with u here, v in ``other``."""
        prods = [bracket(u, v) for u in self.basis() for v in other.basis()]
        return Subspace.span(self.algebra, prods)

    def is_ideal(self) -> bool:
        whole = Subspace.whole(self.algebra)
        return self.contains_subspace(self.bracket(whole)) and self.contains_subspace(whole.bracket(self))


def derived_series(alg: GradedAlgebra) -> list[Subspace]:
    """``L, [L,L], [[L,L],[L,L]], ...`` stopping at 0 or at the first repeated term."""
    if not alg.is_super_lie:
        raise AlgebraError("derived series needs a Lie superalgebra")
    terms = [Subspace.whole(alg)]
    while not terms[-1].is_zero():
        nxt = terms[-1].bracket(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def is_solvable(alg: GradedAlgebra) -> bool:
    return derived_series(alg)[-1].is_zero()


def power_series(sub: Subspace, bracketing: str = "all") -> list[Subspace]:
    """Powers ``I, I^2, I^3, ...`` until the chain reaches 0 or stabilises.

    ``bracketing="all"`` takes ``I^(k+1) = sum_{a+b=k+1} [I^a, I^b]`` (every way
    of bracketing k+1 factors); ``"left"`` uses left-normed products
    ``I^(k+1) = [I^k, I]``.
    """
    if bracketing not in ("all", "left"):
        raise ValueError("bracketing must be 'all' or 'left'")
    terms = [sub]
    while not terms[-1].is_zero():
        k = len(terms)  # computing I^(k+1)
        if bracketing == "left":
            nxt = terms[-1].bracket(sub)
        else:
            nxt = Subspace.zero(sub.algebra)
            for a in range(1, k + 1):
                nxt = nxt + terms[a - 1].bracket(terms[k - a])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def nilpotency_index(sub: Subspace, bracketing: str = "all") -> int | None:
    """Least ``c`` with ``I^c = 0``, or ``None`` if the powers stabilise at a nonzero space."""
    terms = power_series(sub, bracketing)
    return len(terms) if terms[-1].is_zero() else None


def ad_operator(x: Element) -> Matrix:
    """Matrix of ``y -> [y, x]``; column j holds the coordinates of ``[b_j, x]``."""
    alg = x.algebra
    cols = [bracket(alg.basis(j), x).coords for j in range(alg.dim)]
    return Matrix(alg.dim, alg.dim, [cols[j][i] for i in range(alg.dim) for j in range(alg.dim)])


def ideal_generated(alg: GradedAlgebra, gens: Iterable[Element]) -> Subspace:
    """Smallest subspace containing ``gens`` and stable under bracketing with ``alg``."""
    if not alg.is_super_lie:
        raise AlgebraError("ideal_generated needs a Lie superalgebra")
    whole = Subspace.whole(alg)
    cur = Subspace.span(alg, gens)
    while True:
        nxt = cur + cur.bracket(whole) + whole.bracket(cur)
        if nxt == cur:
            return cur
        cur = nxt


# ---------------------------------------------------------------------------
# serialization


def to_json_dict(alg: GradedAlgebra) -> dict:
    out = {
        "name": alg.name,
        "dim": alg.dim,
        "parity": list(alg.parity),
        "structure": [[i, j, [[k, c.numerator, c.denominator] for k, c in prod]]
                      for (i, j), prod in sorted(alg.table.items())],
        "is_super_lie": alg.is_super_lie,
        "labels": list(alg.labels),
    }
    if alg.z_degree is not None:
        out["z_degree"] = list(alg.z_degree)
    if alg.construction:
        out["construction"] = alg.construction
    return out


def from_json_dict(data: Mapping, *, check: bool = True) -> GradedAlgebra:
    dim = int(data["dim"])
    parity = data["parity"]
    if len(parity) != dim:
        raise AlgebraError("parity length does not match dim")
    table = {(int(i), int(j)): [(int(k), Fraction(int(n), int(dn))) for k, n, dn in entries]
             for i, j, entries in data["structure"]}
    return GradedAlgebra(data["name"], parity, table, data.get("z_degree"),
                         super_lie=bool(data.get("is_super_lie", False)), labels=data.get("labels"),
                         check=check, construction=data.get("construction"))


def dumps(alg: GradedAlgebra) -> str:
    return json.dumps(to_json_dict(alg), sort_keys=True, separators=(",", ":"))


def loads(text: str, *, check: bool = True) -> GradedAlgebra:
    return from_json_dict(json.loads(text), check=check)
