"""Multilinear polynomials in even and odd variables of a free Lie superalgebra.

A *monomial* is a word of distinct variables read as a left-normed bracket
``[v1, v2, ..., vn] = [[v1, ..., v(n-1)], vn]``.  A :class:`MultiPoly` is a
rational combination of monomials over one common variable set, kept in a
canonical order.

Bracket *trees* are nested tuples of variables; ``(a, b, c)`` is the
left-normed bracket ``[a, b, c]`` and children may themselves be tuples.  An
:class:`AlternatingForm` keeps a linear combination of trees together with
alternating sets of variables, unexpanded; it can be expanded to a
:class:`MultiPoly` or evaluated directly.

Permutations act on variable slots: ``sigma`` sends the variable
``on[j]`` to ``on[sigma[j]]`` (one-line notation, 0-based).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .algebra import EVEN, ODD, Element, GradedAlgebra, _sparse_add, _sparse_mul
from .linalg import as_scalar
from .perms import perm_sign, signed_permutations

DEFAULT_EXPANSION_BUDGET = 10 ** 7


class PolyError(ValueError):
    pass


class ExpansionTooLarge(PolyError):
    pass


def _natural_key(name: str):
    return tuple(int(tok) if tok.isdigit() else tok for tok in re.findall(r"\d+|\D+", name))


@dataclass(frozen=True)
class Variable:
    name: str
    parity: int

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise PolyError("parity must be 0 (even) or 1 (odd)")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise PolyError(f"bad variable name {self.name!r}")

    def sort_key(self):
        return (self.parity, _natural_key(self.name))

    def __lt__(self, other: "Variable"):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return self.name


def even(name: str) -> Variable:
    return Variable(name, EVEN)


def odd(name: str) -> Variable:
    return Variable(name, ODD)


def even_vars(k: int, prefix: str = "x") -> list[Variable]:
    return [Variable(f"{prefix}{i}", EVEN) for i in range(1, k + 1)]


def odd_vars(m: int, prefix: str = "y") -> list[Variable]:
    return [Variable(f"{prefix}{i}", ODD) for i in range(1, m + 1)]


Word = tuple  # tuple[Variable, ...]


def _word_key(word: Word):
    return tuple(v.sort_key() for v in word)


class MultiPoly:
    """Canonical rational combination of left-normed multilinear monomials."""

    __slots__ = ("_terms", "_vars")

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = (),
                 variables: Iterable[Variable] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for word, c in items:
            word = tuple(word)
            if not word:
                raise PolyError("monomials have length at least 1")
            if len(set(word)) != len(word):
                raise PolyError(f"monomial {word} repeats a variable")
            acc[word] = acc.get(word, 0) + as_scalar(c)
        words = [w for w in acc if acc[w]]
        vs = frozenset(variables) if variables is not None else (frozenset(words[0]) if words else frozenset())
        names = {}
        for v in vs:
            if names.setdefault(v.name, v) != v:
                raise PolyError(f"variable name {v.name} used with both parities")
        for w in acc:
            if frozenset(w) != vs and acc[w]:
                raise PolyError("all monomials must use the same variable set")
        self._vars = vs
        self._terms = tuple(sorted(((w, acc[w]) for w in words), key=lambda wc: _word_key(wc[0])))

    # -- constructors ---------------------------------------------------
    @classmethod
    def monomial(cls, word: Sequence[Variable], coef=1) -> "MultiPoly":
        return cls([(tuple(word), coef)])

    @classmethod
    def zero(cls, variables: Iterable[Variable] = ()) -> "MultiPoly":
        return cls((), variables)

    # -- data -----------------------------------------------------------
    @property
    def terms(self) -> tuple[tuple[Word, Fraction], ...]:
        return self._terms

    @property
    def variables(self) -> frozenset:
        return self._vars

    def sorted_variables(self) -> list[Variable]:
        return sorted(self._vars)

    @property
    def degree(self) -> int:
        return len(self._vars)

    @property
    def even_count(self) -> int:
        return sum(1 for v in self._vars if v.parity == EVEN)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    # -- arithmetic -----------------------------------------------------
    def _combine(self, other: "MultiPoly", s: int) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.is_zero() and not self._vars:
            vs = other._vars
        elif other.is_zero() and not other._vars:
            vs = self._vars
        elif self._vars != other._vars:
            raise PolyError("cannot add polynomials in different variable sets")
        else:
            vs = self._vars
        return MultiPoly(list(self._terms) + [(w, s * c) for w, c in other._terms], vs)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MultiPoly([(w, -c) for w, c in self._terms], self._vars)

    def __mul__(self, c):
        c = as_scalar(c)
        return MultiPoly([(w, c * x) for w, x in self._terms], self._vars)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"MultiPoly({format_terms(self._terms) or '0'})"

    def rename(self, mapping: Mapping[Variable, Variable]) -> "MultiPoly":
        """Substitute variables by variables (must stay injective and parity-preserving)."""
        for a, b in mapping.items():
            if a.parity != b.parity:
                raise PolyError(f"renaming {a} to {b} changes parity")
        vs = [mapping.get(v, v) for v in self._vars]
        if len(set(vs)) != len(vs):
            raise PolyError("renaming is not injective on the variable set")
        return MultiPoly([(tuple(mapping.get(v, v) for v in w), c) for w, c in self._terms], vs)

    def permute(self, perm: Sequence[int], on: Sequence[Variable]) -> "MultiPoly":
        """Substitute ``on[j] -> on[perm[j]]``."""
        _check_slots(self._vars, on)
        return self.rename({on[j]: on[perm[j]] for j in range(len(on))})


def format_terms(terms) -> str:
    return " + ".join(f"{c} * [{','.join(v.name for v in w)}]" for w, c in terms)


def _check_slots(variables, on: Sequence[Variable]):
    if len(set(on)) != len(on):
        raise PolyError("slot list repeats a variable")
    for v in on:
        if v not in variables:
            raise PolyError(f"variable {v} is not in the polynomial")
    if len({v.parity for v in on}) > 1:
        raise PolyError("slot variables must share one parity")


def spanning_monomials(k: int, m: int) -> list[MultiPoly]:
    """All ``(k+m)!`` left-normed monomials in ``x1..xk`` (even) and ``y1..ym`` (odd).

    Order: ``itertools.permutations`` of ``x1..xk, y1..ym``.
    """
    if k < 0 or m < 0 or k + m < 1:
        raise PolyError("need k + m >= 1")
    vs = even_vars(k) + odd_vars(m)
    return [MultiPoly.monomial(w) for w in permutations(vs)]


def alternate(p: MultiPoly, subset: Sequence[Variable]) -> MultiPoly:
    """``sum_sigma sign(sigma) * (p with the subset variables permuted)``."""
    subset = sorted(subset)
    _check_slots(p.variables, subset)
    out = MultiPoly.zero(p.variables)
    for s, perm in signed_permutations(len(subset)):
        out = out + s * p.permute(perm, subset)
    return out


# ---------------------------------------------------------------------------
# bracket trees

Tree = Union[Variable, tuple]


def tree_variables(tree: Tree) -> list[Variable]:
    if isinstance(tree, Variable):
        return [tree]
    out = []
    for c in tree:
        out += tree_variables(c)
    return out


def tree_parity(tree: Tree) -> int:
    return sum(v.parity for v in tree_variables(tree)) % 2


def _check_tree(tree: Tree):
    if isinstance(tree, Variable):
        return
    if not isinstance(tree, tuple) or len(tree) < 2:
        raise PolyError("a bracket needs at least two entries")
    for c in tree:
        _check_tree(c)


def rename_tree(tree: Tree, mapping: Mapping[Variable, Variable]) -> Tree:
    if isinstance(tree, Variable):
        return mapping.get(tree, tree)
    return tuple(rename_tree(c, mapping) for c in tree)


def format_tree(tree: Tree) -> str:
    if isinstance(tree, Variable):
        return tree.name
    return "[" + ",".join(format_tree(c) for c in tree) + "]"


def _mul_words(a: dict, b: dict, budget: int) -> dict:
    if len(a) * len(b) > budget:
        raise ExpansionTooLarge(f"expansion needs about {len(a) * len(b)} products (budget {budget})")
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            out[w] = out.get(w, 0) + ca * cb
    return {w: c for w, c in out.items() if c}


def _operator_words(tree: Tree, budget: int) -> dict:
    """Words ``w`` with ``[u, tree] = sum c_w [u, w...]`` for every ``u`` (super Jacobi)."""
    if isinstance(tree, Variable):
        return {(tree,): Fraction(1)}
    acc = _operator_words(tree[0], budget)
    par = tree_parity(tree[0])
    for c in tree[1:]:
        oc = _operator_words(c, budget)
        pc = tree_parity(c)
        # ad_{[A,B]} = ad_A ad_B - (-1)^{|A||B|} ad_B ad_A, words read left to right
        sign = 1 if par * pc % 2 else -1
        ab = _mul_words(acc, oc, budget)
        ba = _mul_words(oc, acc, budget)
        acc = {w: c for w, c in _sparse_add(ab, ba, sign).items()}
        par = (par + pc) % 2
    return acc


def _word_bound(tree: Tree) -> int:
    if isinstance(tree, Variable):
        return 1
    out = _word_bound(tree[0])
    for c in tree[1:]:
        out *= 2 * _word_bound(c)
    return out


def expansion_bound(tree: Tree) -> int:
    """Number of left-normed terms :func:`expand_tree` produces before cancellation."""
    if isinstance(tree, Variable):
        return 1
    out = expansion_bound(tree[0])
    for c in tree[1:]:
        out *= _word_bound(c)
    return out


def expand_tree(tree: Tree, budget: int = DEFAULT_EXPANSION_BUDGET) -> MultiPoly:
    """Rewrite a bracket tree as a combination of left-normed monomials."""
    _check_tree(tree)
    if expansion_bound(tree) > budget:
        raise ExpansionTooLarge(f"expansion would produce up to {expansion_bound(tree)} terms")
    vs = tree_variables(tree)
    if len(set(vs)) != len(vs):
        raise PolyError("tree repeats a variable")
    if isinstance(tree, Variable):
        return MultiPoly.monomial((tree,))
    first = tree[0]
    acc = {(first,): Fraction(1)} if isinstance(first, Variable) else dict(expand_tree(first, budget).terms)
    for c in tree[1:]:
        acc = _mul_words(acc, _operator_words(c, budget), budget)
    return MultiPoly(acc, vs)


# ---------------------------------------------------------------------------
# evaluation


def _check_assignment(variables, assignment: Mapping[Variable, Element]) -> GradedAlgebra | None:
    alg = None
    for v in variables:
        if v not in assignment:
            raise PolyError(f"no value assigned to {v}")
        e = assignment[v]
        if not e.has_parity(v.parity):
            raise PolyError(f"value for {v} is not {'even' if v.parity == EVEN else 'odd'}")
        if alg is None:
            alg = e.algebra
        elif e.algebra is not alg and e.algebra != alg:
            raise PolyError("assigned values live in different algebras")
    return alg


def evaluate(p: MultiPoly, assignment: Mapping[Variable, Element], algebra: GradedAlgebra | None = None) -> Element:
    """Value of ``p`` under the substitution; shared word prefixes are evaluated once."""
    alg = _check_assignment(p.variables, assignment) or algebra
    if alg is None:
        raise PolyError("cannot infer the target algebra of an empty evaluation")
    table = alg.table
    total: dict = {}
    prev: Word = ()
    stack: list[dict] = []
    for word, c in p.terms:
        common = 0
        while common < min(len(prev), len(word)) and prev[common] == word[common]:
            common += 1
        del stack[common:]
        for i in range(common, len(word)):
            val = assignment[word[i]]._data
            stack.append(val if i == 0 else (_sparse_mul(table, stack[-1], val) if stack[-1] else {}))
        prev = word
        if stack[-1]:
            total = _sparse_add(total, stack[-1], c)
    return Element(alg, total)


def _eval_tree_raw(tree: Tree, values: Mapping[Variable, dict], table, cache: dict | None = None) -> dict:
    if isinstance(tree, Variable):
        return values[tree]
    if cache is not None and tree in cache:
        return cache[tree]
    acc = _eval_tree_raw(tree[0], values, table, cache)
    for c in tree[1:]:
        if not acc:
            break
        acc = _sparse_mul(table, acc, _eval_tree_raw(c, values, table, cache))
    if cache is not None:
        cache[tree] = acc
    return acc


def evaluate_tree(tree: Tree, assignment: Mapping[Variable, Element]) -> Element:
    _check_tree(tree)
    alg = _check_assignment(tree_variables(tree), assignment)
    values = {v: e._data for v, e in assignment.items()}
    return Element(alg, _eval_tree_raw(tree, values, alg.table))


# ---------------------------------------------------------------------------
# alternating forms


@dataclass(frozen=True)
class AlternatingForm:
    """``Alt_{S1} ... Alt_{Sr}`` applied to a combination of bracket trees, kept unexpanded."""

    base: tuple  # tuple[(Fraction, Tree), ...]
    alt_sets: tuple = ()  # tuple[tuple[Variable, ...], ...]

    def __post_init__(self):
        base = tuple((as_scalar(c), t) for c, t in self.base)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "alt_sets", tuple(tuple(s) for s in self.alt_sets))
        vsets = set()
        for _, t in base:
            _check_tree(t)
            vs = tree_variables(t)
            if len(set(vs)) != len(vs):
                raise PolyError("tree repeats a variable")
            vsets.add(frozenset(vs))
        if len(vsets) > 1:
            raise PolyError("all trees must use the same variable set")
        allv = vsets.pop() if vsets else frozenset()
        seen = set()
        for s in self.alt_sets:
            _check_slots(allv, s)
            if seen & set(s):
                raise PolyError("alternating sets must be disjoint")
            seen |= set(s)

    @classmethod
    def of_tree(cls, tree: Tree, alt_sets: Sequence[Sequence[Variable]] = ()) -> "AlternatingForm":
        return cls(((Fraction(1), tree),), tuple(tuple(s) for s in alt_sets))

    @property
    def variables(self) -> frozenset:
        return frozenset(tree_variables(self.base[0][1])) if self.base else frozenset()

    def term_count(self) -> int:
        n = len(self.base)
        for s in self.alt_sets:
            n *= factorial(len(s))
        return n

    def signed_trees(self) -> Iterator[tuple[Fraction, Tree]]:
        """Every ``(coefficient, renamed tree)`` of the formal alternation, unmerged."""
        sets = self.alt_sets

        def rec(i, sign, mapping):
            if i == len(sets):
                for c, t in self.base:
                    yield sign * c, rename_tree(t, mapping)
                return
            s = sets[i]
            for sg, perm in signed_permutations(len(s)):
                m2 = dict(mapping)
                m2.update({s[j]: s[perm[j]] for j in range(len(s))})
                yield from rec(i + 1, sign * sg, m2)

        yield from rec(0, 1, {})

    def expand(self, budget: int = DEFAULT_EXPANSION_BUDGET) -> MultiPoly:
        """Left-normed canonical form; raises :class:`ExpansionTooLarge` past ``budget`` terms."""
        bound = sum(expansion_bound(t) for _, t in self.base)
        for s in self.alt_sets:
            bound *= factorial(len(s))
        if bound > budget:
            raise ExpansionTooLarge(f"alternation could produce up to {bound} terms")
        base = MultiPoly.zero(self.variables)
        for c, t in self.base:
            base = base + c * expand_tree(t, budget)
        for s in self.alt_sets:
            if len(base) * factorial(len(s)) > budget:
                raise ExpansionTooLarge(f"alternation would produce {len(base) * factorial(len(s))} terms")
            base = alternate(base, s)
        return base


def evaluate_formal(form: AlternatingForm, assignment: Mapping[Variable, Element]) -> Element:
    """Expand the alternation symbolically into renamed trees, then evaluate them.

    Subtree values are cached across the renamed trees, which share most of
    their subtrees.
    """
    alg = _check_assignment(form.variables, assignment)
    values = {v: e._data for v, e in assignment.items()}
    cache: dict = {}
    total: dict = {}
    for c, tree in form.signed_trees():
        val = _eval_tree_raw(tree, values, alg.table, cache)
        if val:
            total = _sparse_add(total, val, c)
    return Element(alg, total)


def evaluate_summed(form: AlternatingForm, assignment: Mapping[Variable, Element]) -> Element:
    """Sum of signed evaluations over permuted substitutions, pruned at zero subtrees.

    The alternation is realised on the values side: each alternating slot is
    given every value of its set in turn, and a partial bracket that already
    vanishes cuts the whole branch.
    """
    alg = _check_assignment(form.variables, assignment)
    table = alg.table
    slot_of: dict[Variable, tuple[int, int]] = {}
    for si, s in enumerate(form.alt_sets):
        for j, v in enumerate(s):
            slot_of[v] = (si, j)
    set_values = [[assignment[v]._data for v in s] for s in form.alt_sets]

    def gen(tree, used):
        # yields (value, used) where used maps slot -> chosen value index
        if isinstance(tree, Variable):
            if tree not in slot_of:
                yield assignment[tree]._data, used
                return
            si, j = slot_of[tree]
            taken = {vi for (sj, _), vi in used.items() if sj == si}
            for vi in range(len(form.alt_sets[si])):
                if vi in taken:
                    continue
                u2 = dict(used)
                u2[(si, j)] = vi
                yield set_values[si][vi], u2
            return
        yield from chain(tree, 1, gen(tree[0], used))

    def chain(tree, i, partials):
        for acc, used in partials:
            if not acc:
                continue
            if i == len(tree):
                yield acc, used
                continue
            nxt = ((v, u) for v, u in gen(tree[i], used))
            yield from chain(tree, i + 1, ((_sparse_mul(table, acc, v), u) for v, u in nxt))

    total: dict = {}
    for c, tree in form.base:
        for val, used in gen(tree, {}):
            if not val:
                continue
            sign = 1
            for si, s in enumerate(form.alt_sets):
                sign *= perm_sign([used[(si, j)] for j in range(len(s))])
            total = _sparse_add(total, val, sign * c)
    return Element(alg, total)


# ---------------------------------------------------------------------------
# text format

_DECL_RE = re.compile(r"^(even|odd)\s+(.+)$")
_ALT_RE = re.compile(r"^alt\s*\{([^}]*)\}$")
_TERM_RE = re.compile(r"^([+-]?\s*\d+(?:/\d+)?)\s*\*\s*(\[.*\])$")


def _parse_bracket(text: str, names: Mapping[str, Variable]) -> Tree:
    pos = 0

    def item():
        nonlocal pos
        while pos < len(text) and text[pos] == " ":
            pos += 1
        if pos < len(text) and text[pos] == "[":
            pos += 1
            kids = [item()]
            while True:
                while pos < len(text) and text[pos] == " ":
                    pos += 1
                if pos >= len(text):
                    raise PolyError("unterminated bracket")
                if text[pos] == ",":
                    pos += 1
                    kids.append(item())
                elif text[pos] == "]":
                    pos += 1
                    break
                else:
                    raise PolyError(f"unexpected {text[pos]!r} in bracket")
            return kids[0] if len(kids) == 1 else tuple(kids)
        m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text[pos:])
        if not m:
            raise PolyError(f"expected a variable at {text[pos:]!r}")
        pos += m.end()
        if m.group(0) not in names:
            raise PolyError(f"undeclared variable {m.group(0)}")
        return names[m.group(0)]

    tree = item()
    if text[pos:].strip():
        raise PolyError(f"trailing text {text[pos:]!r}")
    return tree


def parse(text: str) -> AlternatingForm:
    """Read the textual format: declarations, optional ``alt {...}`` lines, then terms.

    Example::

        even x1 x2
        odd y1
        alt {x1,x2}
        1 * [x1,y1,x2]
        -1/2 * [x2,[x1,y1]]
    """
    names: dict[str, Variable] = {}
    alts: list[list[str]] = []
    base = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _DECL_RE.match(line):
            par = EVEN if m.group(1) == "even" else ODD
            for name in re.split(r"[\s,]+", m.group(2).strip()):
                v = Variable(name, par)
                if names.setdefault(name, v) != v:
                    raise PolyError(f"line {lineno}: {name} declared with both parities")
        elif m := _ALT_RE.match(line):
            alts.append([n.strip() for n in m.group(1).split(",") if n.strip()])
        elif m := _TERM_RE.match(line):
            coef = Fraction(m.group(1).replace(" ", ""))
            base.append((coef, _parse_bracket(m.group(2), names)))
        else:
            raise PolyError(f"line {lineno}: cannot parse {raw!r}")
    for s in alts:
        for n in s:
            if n not in names:
                raise PolyError(f"undeclared variable {n} in alt set")
    return AlternatingForm(tuple(base), tuple(tuple(names[n] for n in s) for s in alts))


def format_poly(obj: MultiPoly | AlternatingForm) -> str:
    """Canonical text for a polynomial or an alternating form (inverse of :func:`parse`)."""
    if isinstance(obj, MultiPoly):
        vs = obj.sorted_variables()
        trees = [(c, w if len(w) > 1 else w[0]) for w, c in obj.terms]
        alts: tuple = ()
    else:
        vs = sorted(obj.variables)
        trees = list(obj.base)
        alts = obj.alt_sets
    lines = []
    ev = [v.name for v in vs if v.parity == EVEN]
    od = [v.name for v in vs if v.parity == ODD]
    if ev:
        lines.append("even " + " ".join(ev))
    if od:
        lines.append("odd " + " ".join(od))
    for s in alts:
        lines.append("alt {" + ",".join(v.name for v in s) + "}")
    for c, t in trees:
        lines.append(f"{c} * {format_tree(t) if not isinstance(t, Variable) else '[' + t.name + ']'}")
    return "\n".join(lines) + "\n"
