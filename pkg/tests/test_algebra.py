from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pi_codim import algebra as A
from pi_codim.algebra import (EVEN, ODD, AlgebraError, GradedAlgebra, NonAssociativeError, Subspace, ad_operator,
                              bracket, derived_series, find_anticommutativity_violation, find_jacobi_violation,
                              ideal_generated, is_solvable, nilpotency_index, power_series, superbracket_algebra,
                              supercommutator)
from pi_codim.ut import build_S


def sl2():
    # e, f, h
    table = {(2, 0): [(0, 2)], (0, 2): [(0, -2)], (2, 1): [(1, -2)], (1, 2): [(1, 2)],
             (0, 1): [(2, 1)], (1, 0): [(2, -1)]}
    return GradedAlgebra("sl2", [EVEN] * 3, table, super_lie=True, labels=["e", "f", "h"])


def heisenberg():
    return GradedAlgebra("heis", [EVEN] * 3, {(0, 1): [(2, 1)], (1, 0): [(2, -1)]}, super_lie=True)


def matrices_1_1():
    """Associative superalgebra M(1|1): e11, e22 even; e12, e21 odd."""
    units = [(0, 0), (1, 1), (0, 1), (1, 0)]
    table = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                table[(a, b)] = [(units.index((i, l)), 1)]
    return GradedAlgebra("M(1|1)", [EVEN, EVEN, ODD, ODD], table)


def test_sl2_is_lie_and_not_solvable():
    g = sl2()
    e, f, h = g.basis_elements()
    assert bracket(e, f) == h
    assert bracket(h, e) == 2 * e
    assert not is_solvable(g)
    assert nilpotency_index(Subspace.whole(g)) is None


def test_heisenberg_nilpotent():
    g = heisenberg()
    whole = Subspace.whole(g)
    assert [s.dim for s in power_series(whole)] == [3, 1, 0]
    assert nilpotency_index(whole) == 3
    assert nilpotency_index(whole, "left") == 3
    assert is_solvable(g)
    assert [s.dim for s in derived_series(g)][-1] == 0


def test_superbracket_of_matrix_superalgebra_is_gl11():
    gl = superbracket_algebra(matrices_1_1())
    e11, e22, e12, e21 = gl.basis_elements()
    # odd-odd bracket is the anticommutator
    assert bracket(e12, e21) == e11 + e22
    assert bracket(e12, e12).is_zero()
    assert bracket(e11, e12) == e12
    assert find_jacobi_violation(gl) is None


def test_supercommutator_in_associative_algebra():
    m = matrices_1_1()
    e11, e22, e12, e21 = m.basis_elements()
    assert supercommutator(e12, e21) == e11 + e22
    assert supercommutator(e11, e12) == e12


def test_superbracket_rejects_nonassociative():
    bad = GradedAlgebra("bad", [EVEN, EVEN], {(0, 0): [(1, 1)], (1, 0): [(1, 1)]})
    with pytest.raises(NonAssociativeError):
        superbracket_algebra(bad)


def test_constructor_detects_identity_failures():
    with pytest.raises(AlgebraError):
        GradedAlgebra("sym", [EVEN] * 3, {(0, 1): [(2, 1)], (1, 0): [(2, 1)]}, super_lie=True)
    table = {(0, 1): [(1, 1)], (1, 0): [(1, -1)], (1, 2): [(0, 1)], (2, 1): [(0, -1)]}
    with pytest.raises(AlgebraError):
        GradedAlgebra("nonjac", [EVEN] * 3, table, super_lie=True)
    g = GradedAlgebra("nonjac", [EVEN] * 3, table, super_lie=True, check=False)
    assert find_anticommutativity_violation(g) is None
    assert find_jacobi_violation(g) is not None


def test_odd_odd_bracket_must_be_symmetric():
    # [y, y] may be nonzero for odd y
    g = GradedAlgebra("osp-like", [EVEN, ODD], {(1, 1): [(0, 2)]}, super_lie=True)
    assert find_anticommutativity_violation(g) is None
    with pytest.raises(AlgebraError):
        GradedAlgebra("wrong", [EVEN, EVEN], {(1, 1): [(0, 2)]}, super_lie=True)


def test_grading_is_enforced():
    with pytest.raises(AlgebraError):
        GradedAlgebra("bad", [EVEN, ODD], {(0, 0): [(1, 1)]})
    with pytest.raises(AlgebraError):
        GradedAlgebra("bad", [EVEN, EVEN], {(0, 0): [(1, 1)]}, z_degree=[1, 1])


def test_subspace_calculus():
    g = heisenberg()
    x, y, z = g.basis_elements()
    center = Subspace.span(g, [z])
    assert center.is_ideal()
    assert not Subspace.span(g, [x]).is_ideal()
    assert ideal_generated(g, [x]) == Subspace.span(g, [x, z])
    s = Subspace.span(g, [x + z, 2 * x])
    assert s.dim == 2 and s.codim == 1
    assert z in s and y not in s
    assert s.contains_subspace(center)
    assert (s + Subspace.span(g, [y])).dim == 3


def test_ad_operator_columns():
    g = sl2()
    e, f, h = g.basis_elements()
    ad = ad_operator(h)
    # [e, h] = -2e, [f, h] = 2f
    assert ad.column(0) == (Fraction(-2), 0, 0)
    assert ad.column(1) == (0, Fraction(2), 0)
    assert ad.column(2) == (0, 0, 0)


def test_json_round_trip_is_exact_and_deterministic():
    S, _ = build_S(3, "orth")
    text = A.dumps(S)
    back = A.loads(text)
    assert back == S
    assert back.labels == S.labels
    assert back.construction == S.construction
    assert A.dumps(back) == text


def test_element_parts():
    S, N = build_S(2, "orth")
    v = N.X[0] + N.Y[0]
    assert v.parity is None
    assert v.even_part() == N.X[0]
    assert v.odd_part() == N.Y[0]
    assert N.Y0.parity == ODD


coeffs = st.lists(st.integers(-3, 3), min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_s2_super_antisymmetry_and_jacobi_on_random_homogeneous(a, b, c):
    S, _ = build_S(2, "orth")
    xs = [S.element(v) for v in (a, b, c)]
    parts = [(x.even_part(), EVEN) for x in xs] + [(x.odd_part(), ODD) for x in xs]
    for u, pu in parts:
        for v, pv in parts:
            assert bracket(u, v) == -(-1) ** (pu * pv) * bracket(v, u)
            for w, _ in parts:
                lhs = bracket(u, bracket(v, w))
                rhs = bracket(bracket(u, v), w) + (-1) ** (pu * pv) * bracket(v, bracket(u, w))
                assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs, st.integers(-5, 5))
def test_bracket_is_bilinear(a, b, s):
    S, _ = build_S(2, "sympl")
    x, y = S.element(a), S.element(b)
    assert bracket(s * x + y, y) == s * bracket(x, y) + bracket(y, y)
