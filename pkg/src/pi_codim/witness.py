"""Multialternating witness elements in ``S(t)`` and their free counterparts.

Each witness is a bracket tree over named variables together with alternating
sets and a canonical substitution by distinguished elements of ``S(t)``
(see :class:`pi_codim.ut.SNamedElements`).  The tree is never expanded unless
asked; :func:`pi_codim.poly.evaluate_summed` and
:func:`pi_codim.poly.evaluate_formal` evaluate the alternation directly.

Even-t witness ``W(p, q)`` with ``m = t/2``::

    A_i  = [E_{i,i+1}, [Y_i^(1), Z_i^(0)], ..., [Y_i^(p+1), Z_i^(p)], E_ii^(1), ..., E_ii^(q)]   i <= m
    A_j  = [E_{j,j+1}, E_jj^(1), ..., E_jj^(q)]                                             m < j < 2m
    A_2m = [Y0, I^(1), ..., I^(q)]
    W    = [A_1, ..., A_2m]

The even alternating set ``j`` is ``{E_11^(j), ..., E_{2m-1,2m-1}^(j), I^(j)}``
and the odd set ``i`` is ``{Y_1^(i), ..., Y_m^(i), Z_1^(i), ..., Z_m^(i)}``.
For odd ``t = 2m+1`` the chain runs up to ``E_{2m,2m+1}`` and the even sets
also contain ``E_{2m,2m}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import EVEN, ODD, Element, bracket
from .poly import (AlternatingForm, Tree, Variable, evaluate_formal, evaluate_summed, evaluate_tree,
                   tree_variables)
from .symfunc import Partition, hook_dimension
from .ut import InvolutionKind, SNamedElements, build_S


@dataclass(frozen=True)
class Witness:
    """A bracket tree with alternating sets and its canonical substitution into ``S(t)``."""

    name: str
    t: int
    kind: InvolutionKind
    tree: Tree
    alt_sets: tuple
    assignment: Mapping[Variable, Element] = field(repr=False)
    shapes: tuple | None = None  # (lambda, mu) attached to the alternating structure

    @property
    def form(self) -> AlternatingForm:
        return AlternatingForm.of_tree(self.tree, self.alt_sets)

    @property
    def variables(self) -> list[Variable]:
        return tree_variables(self.tree)

    @property
    def degree(self) -> int:
        return len(self.variables)

    @property
    def even_count(self) -> int:
        return sum(1 for v in self.variables if v.parity == EVEN)

    @property
    def sector(self) -> tuple[int, int]:
        return self.even_count, self.degree - self.even_count

    def plain_value(self) -> Element:
        """Value of the tree with every alternation dropped."""
        return evaluate_tree(self.tree, self.assignment)

    def value(self, method: str = "summed") -> Element:
        """Value of the alternated element; ``method`` is ``"summed"`` or ``"formal"``."""
        if method == "summed":
            return evaluate_summed(self.form, self.assignment)
        if method == "formal":
            return evaluate_formal(self.form, self.assignment)
        raise ValueError("method must be 'summed' or 'formal'")

    def alternation_factor(self) -> int:
        """Product of the sizes' factorials: the most the alternated value can exceed the plain one by."""
        from math import factorial, prod
        return prod(factorial(len(s)) for s in self.alt_sets)

    def with_assignment(self, assignment: Mapping[Variable, Element]) -> "Witness":
        return Witness(self.name, self.t, self.kind, self.tree, self.alt_sets, dict(assignment), self.shapes)


def _ev(name):
    return Variable(name, EVEN)


def _od(name):
    return Variable(name, ODD)


def _join(parts: list) -> Tree:
    return parts[0] if len(parts) == 1 else tuple(parts)


def witness_a(level: int, m: int, kind="orth") -> Witness:
    """The small witnesses ``a1``, ``a2``, ``a3`` in ``S(2m)``.

    * ``a1 = [[E12, E11], ..., [E_{m,m+1}, E_mm]]`` alternating on ``{E_11..E_mm}``;
    * ``a2 = [[E12, [Y1,Z1], [Y1,Z1]], ...]`` alternating on the first ``Y_i`` and
      second ``Z_i`` of each factor;
    * ``a3`` adds the even set ``{E_11, ..., E_{2m-1,2m-1}, I}`` and closes with
      ``[E_{j,j+1}, E_jj]`` (``m < j < 2m``) and ``[Y0, I]``.
    """
    if level not in (1, 2, 3) or m < 1:
        raise ValueError("level must be 1, 2 or 3 and m >= 1")
    t = 2 * m
    S, N = build_S(t, kind)
    assign: dict[Variable, Element] = {}
    even_set, odd_ya, odd_za = [], [], []
    factors = []

    def var(name, value, parity):
        v = Variable(name, parity)
        assign[v] = value
        return v

    for i in range(1, m + 1):
        e = var(f"xe{i}", N.E[(i, i + 1)], EVEN)
        parts = [e]
        if level in (1, 3):
            d = var(f"xd{i}", N.E[(i, i)], EVEN)
            even_set.append(d)
            parts.append(d)
        if level in (2, 3):
            ya = var(f"ya{i}", N.Y[i - 1], ODD)
            zb = var(f"zb{i}", N.Z[i - 1], ODD)
            yb = var(f"yb{i}", N.Y[i - 1], ODD)
            za = var(f"za{i}", N.Z[i - 1], ODD)
            odd_ya.append(ya)
            odd_za.append(za)
            parts += [(ya, zb), (yb, za)]
        factors.append(tuple(parts))
    if level == 3:
        for j in range(m + 1, 2 * m):
            e = var(f"xe{j}", N.E[(j, j + 1)], EVEN)
            d = var(f"xd{j}", N.E[(j, j)], EVEN)
            even_set.append(d)
            factors.append((e, d))
        y0 = var("y0", N.Y0, ODD)
        xi = var("xI", N.Ibig, EVEN)
        even_set.append(xi)
        factors.append((y0, xi))
    sets = []
    if even_set:
        sets.append(tuple(even_set))
    if odd_ya:
        sets.append(tuple(odd_ya + odd_za))
    return Witness(f"a{level}(m={m})", t, InvolutionKind.parse(kind), _join(factors), tuple(sets), assign)


def witness_W(p: int, q: int, t: int, kind="orth") -> Witness:
    """The replicated witness ``W(p, q)`` in ``S(t)`` with its ``q`` even and ``p`` odd alternating sets."""
    if p < 1 or q < 1 or t < 2:
        raise ValueError("need p, q >= 1 and t >= 2")
    S, N = build_S(t, kind)
    m = t // 2
    last_chain = 2 * m - 1 if t % 2 == 0 else 2 * m
    assign: dict[Variable, Element] = {}

    def var(name, value, parity):
        v = Variable(name, parity)
        assign[v] = value
        return v

    even_sets = [[] for _ in range(q)]
    odd_y = [[] for _ in range(p)]
    odd_z = [[] for _ in range(p)]
    factors = []
    for i in range(1, m + 1):
        parts = [var(f"xe{i}", N.E[(i, i + 1)], EVEN)]
        for s in range(p + 1):
            y = var(f"y{i}_{s + 1}", N.Y[i - 1], ODD)
            z = var(f"z{i}_{s}", N.Z[i - 1], ODD)
            if s + 1 <= p:
                odd_y[s].append(y)
            if s >= 1:
                odd_z[s - 1].append(z)
            parts.append((y, z))
        for j in range(1, q + 1):
            d = var(f"xd{i}_{j}", N.E[(i, i)], EVEN)
            even_sets[j - 1].append(d)
            parts.append(d)
        factors.append(tuple(parts))
    for i in range(m + 1, last_chain + 1):
        parts = [var(f"xe{i}", N.E[(i, i + 1)], EVEN)]
        for j in range(1, q + 1):
            d = var(f"xd{i}_{j}", N.E[(i, i)], EVEN)
            even_sets[j - 1].append(d)
            parts.append(d)
        factors.append(tuple(parts))
    parts = [var("y0", N.Y0, ODD)]
    for j in range(1, q + 1):
        d = var(f"xI_{j}", N.Ibig, EVEN)
        even_sets[j - 1].append(d)
        parts.append(d)
    factors.append(tuple(parts))
    sets = tuple(tuple(s) for s in even_sets) + tuple(tuple(y + z) for y, z in zip(odd_y, odd_z))
    lam = Partition([q] * len(even_sets[0]))
    mu = Partition([p] * (2 * m))
    return Witness(f"W(p={p},q={q})", t, InvolutionKind.parse(kind), tuple(factors), sets, assign, (lam, mu))


def witness_degree(p: int, q: int, t: int) -> tuple[int, int]:
    """``(n, k)``: total degree and number of even variables of ``W(p, q)`` in ``S(t)``."""
    m = t // 2
    if t % 2 == 0:
        return 2 * m * p + 2 * m * q + 4 * m, 2 * m * q + 2 * m - 1
    return 2 * m * p + (2 * m + 1) * q + 4 * m + 1, (2 * m + 1) * q + 2 * m


def padded_witness(w: Witness, i: int, j: int) -> Witness:
    """``[w, x1, ..., xi, y1, ..., yj]`` with ``x -> E11`` and ``y -> Z1, Y1, Z1, Y1, ...``.

    The odd padding realises right multiplication by ``[Y1, Z1]`` one pair at a
    time: on the odd values reached here ``[u, Y1] = 0``, so
    ``[u, [Y1, Z1]] = [[u, Z1], Y1]``.
    """
    _, N = build_S(w.t, w.kind)
    assign = dict(w.assignment)
    parts = [w.tree]
    for a in range(1, i + 1):
        v = Variable(f"px{a}", EVEN)
        assign[v] = N.E[(1, 1)]
        parts.append(v)
    for b in range(1, j + 1):
        v = Variable(f"py{b}", ODD)
        assign[v] = N.Z[0] if b % 2 else N.Y[0]
        parts.append(v)
    tree = parts[0] if len(parts) == 1 else tuple(parts)
    return Witness(f"{w.name}+pad({i},{j})", w.t, w.kind, tree, w.alt_sets, assign, w.shapes)


def claimed_value(t: int, kind, q: int) -> Element:
    """``2^q [E_{1,2m-1}, Y0]``: the value the witness is expected to take, up to sign."""
    _, N = build_S(t, kind)
    m = t // 2
    return 2 ** q * bracket(N.E[(1, 2 * m - 1)], N.Y0)


def proportionality(v: Element, ref: Element) -> Fraction | None:
    """``c`` with ``v == c * ref``, or ``None`` (``ref`` must be nonzero)."""
    if ref.is_zero():
        raise ValueError("reference element is zero")
    k = min(ref.support)
    c = v[k] / ref[k]
    return c if v == c * ref else None


def degree_zero_containment(w: Witness) -> dict:
    """Check that every alternating slot takes a value of degree 0 of the right parity.

    Returns the dimensions of the degree-0 even and odd subspaces together with
    the containment verdict.
    """
    S = next(iter(w.assignment.values())).algebra
    deg = S.z_degree
    v0 = [k for k in range(S.dim) if deg[k] == 0 and S.parity[k] == EVEN]
    v1 = [k for k in range(S.dim) if deg[k] == 0 and S.parity[k] == ODD]
    ok = True
    for s in w.alt_sets:
        for v in s:
            allowed = v0 if v.parity == EVEN else v1
            if any(k not in allowed for k in w.assignment[v].support):
                ok = False
    return {"dim_V0": len(v0), "dim_V1": len(v1), "contained": ok}


def rectangular_shapes(p: int, q: int, t: int) -> tuple[Partition, Partition]:
    m = t // 2
    rows = 2 * m if t % 2 == 0 else 2 * m + 1
    return Partition([q] * rows), Partition([p] * (2 * m))


def lower_bound_value(p: int, q: int, t: int) -> int:
    lam, mu = rectangular_shapes(p, q, t)
    return hook_dimension(lam) * hook_dimension(mu)
