from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from oracles import count_standard_tableaux, cycle_type, fixed_tabloids, kostka
from pi_codim.perms import compose, identity, inverse, perm_sign
from pi_codim.poly import MultiPoly, even
from pi_codim.symfunc import (CapExceeded, GroupAlgebraElement, Partition, Tableau, apply_group_element,
                              character_table, class_size, hook_dimension, dimension_bound_violations, mn_character,
                              partitions, quasi_idempotency_constant, rectangular_crossover,
                              rectangular_lower_bound, stabilizers, standard_tableaux, young_symmetrizer, z_value)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_counts_and_order():
    for n, c in enumerate(PARTITION_COUNTS):
        assert sum(1 for _ in partitions(n)) == c
    assert [p.parts for p in partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partition_basics():
    lam = Partition.parse("(4,2,1)")
    assert str(lam) == "(4,2,1)"
    assert lam.weight == 7 and lam.height == 3
    assert lam.conjugate() == (3, 2, 1, 1)
    assert lam.hook_lengths() == [[6, 4, 2, 1], [3, 1], [1]]
    assert lam.cells_below(1) == 3
    assert lam.cells_below(3) == 0
    assert Partition.parse("()") == Partition()
    with pytest.raises(ValueError):
        Partition([1, 2])


@pytest.mark.parametrize("n", range(1, 7))
def test_hook_formula_against_brute_force_tableaux(n):
    for lam in partitions(n):
        tabs = list(standard_tableaux(lam))
        assert len(tabs) == hook_dimension(lam) == count_standard_tableaux(lam.parts)
        assert len(set(tabs)) == len(tabs)
        assert all(T.is_standard() for T in tabs)


def test_known_character_table_s3():
    classes = [(1, 1, 1), (2, 1), (3,)]
    expected = {(3,): [1, 1, 1], (2, 1): [2, 0, -1], (1, 1, 1): [1, -1, 1]}
    for lam, row in expected.items():
        assert [mn_character(lam, c) for c in classes] == row


@pytest.mark.parametrize("n", range(1, 6))
def test_characters_decompose_permutation_modules(n):
    """Fixed tabloids of shape mu equal sum_lambda K(lambda, mu) chi_lambda."""
    table = character_table(n)
    parts = list(partitions(n))
    reps = {}
    for p in permutations(range(n)):
        reps.setdefault(cycle_type(p), p)
    for mu in parts:
        for cls, perm in reps.items():
            lhs = fixed_tabloids(mu.parts, perm)
            rhs = sum(kostka(lam.parts, mu.parts) * table[(lam, Partition(cls))] for lam in parts)
            assert lhs == rhs


@pytest.mark.parametrize("n", range(1, 8))
def test_character_orthogonality(n):
    table = character_table(n)
    parts = list(partitions(n))
    for a in parts:
        for b in parts:
            s = sum(Fraction(table[(a, c)] * table[(b, c)], z_value(c)) for c in parts)
            assert s == (1 if a == b else 0)


def test_class_sizes_sum_to_group_order():
    for n in range(1, 9):
        assert sum(class_size(c) for c in partitions(n)) == factorial(n)


def test_stabilizers_and_cap():
    T = Tableau([[1, 2, 3], [4, 5]])
    rows, cols = stabilizers(T)
    assert len(rows) == 12 and len(cols) == 4
    with pytest.raises(CapExceeded):
        stabilizers(Tableau.canonical((5, 4)))
    with pytest.raises(ValueError):
        Tableau([[1, 1]])


@pytest.mark.parametrize("n", range(1, 5))
def test_young_symmetrizers_quasi_idempotent(n):
    for lam in partitions(n):
        gamma = quasi_idempotency_constant(lam)
        for T in standard_tableaux(lam):
            e = young_symmetrizer(T)
            assert e * e == e * gamma


def test_young_symmetrizer_of_one_row_and_one_column():
    e = young_symmetrizer(Tableau.canonical((3,)))
    assert all(c == 1 for _, c in e.items()) and len(e.items()) == 6
    e = young_symmetrizer(Tableau.canonical((1, 1, 1)))
    assert all(c == perm_sign(p) for p, c in e.items())


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(4)), st.permutations(range(4)))
def test_group_action_on_polynomials_is_a_left_action(s, t):
    on = [even(f"x{i}") for i in range(1, 5)]
    p = MultiPoly([((on[0], on[1], on[2], on[3]), 1), ((on[2], on[0], on[3], on[1]), -2)])
    gs = GroupAlgebraElement(4, {tuple(s): 1})
    gt = GroupAlgebraElement(4, {tuple(t): 1})
    assert apply_group_element(gs * gt, p, on) == apply_group_element(gs, apply_group_element(gt, p, on), on)


def test_symmetrizer_action_is_quasi_idempotent_on_polynomials():
    on = [even(f"x{i}") for i in range(1, 4)]
    p = MultiPoly.monomial(tuple(on))
    T = Tableau.canonical((2, 1))
    e = young_symmetrizer(T)
    once = apply_group_element(e, p, on)
    assert not once.is_zero()
    assert apply_group_element(e, once, on) == once * quasi_idempotency_constant(T.shape)


@settings(max_examples=100, deadline=None)
@given(st.permutations(range(6)), st.permutations(range(6)))
def test_perm_helpers(p, q):
    p, q = tuple(p), tuple(q)
    assert compose(p, inverse(p)) == identity(6)
    assert perm_sign(compose(p, q)) == perm_sign(p) * perm_sign(q)


def test_rectangular_bound_and_crossover():
    dim, bound = rectangular_lower_bound(2, 3)
    assert dim == hook_dimension((3, 3)) == 5
    assert bound == Fraction(2 ** 6, 6)
    rows = rectangular_crossover(2, 6)
    assert [r["s"] for r in rows] == list(range(1, 7))


def test_dimension_bound_small_range():
    checked, bad = dimension_bound_violations(8, 3, 2)
    assert checked > 0 and bad == []
