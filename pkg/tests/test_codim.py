from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_rank
from pi_codim.algebra import EVEN, ODD, GradedAlgebra
from pi_codim.codim import (CapExceeded, codim_table, cocharacter, colength, colength_bound, graded_codimension,
                            height_violations, nth_root, partial_codimension, sector_reports, upper_bound,
                            upper_bound_check, vanishing_violations)
from pi_codim.poly import even_vars, evaluate, odd_vars, spanning_monomials
from pi_codim.symfunc import Partition, hook_dimension
from pi_codim.ut import build_S, ideal_data


def oracle_codim(alg, k, m):
    """Rank of the evaluation matrix built through the polynomial evaluator and naive elimination."""
    mons = spanning_monomials(k, m)
    xs, ys = even_vars(k), odd_vars(m)
    ev, od = alg.indices_of_parity(EVEN), alg.indices_of_parity(ODD)
    rows = [[] for _ in mons]
    for sub in product(*([ev] * k + [od] * m)):
        assign = {v: alg.basis(b) for v, b in zip(xs + ys, sub)}
        for r, p in enumerate(mons):
            rows[r].extend(evaluate(p, assign).coords)
    return naive_rank(rows)


# partial codimensions c_{k,n-k}(S(2), orthogonal), k = 0..n, from the evaluation-matrix engine;
# degrees up to 4 are re-derived by the independent oracle below
S2_CODIMS = {
    1: [1, 1],
    2: [1, 1, 1],
    3: [2, 2, 2, 2],
    4: [6, 6, 6, 6, 3],
    5: [20, 18, 21, 18, 18, 4],
    6: [40, 50, 48, 57, 50, 50, 5],
}
S2_COLENGTHS = {1: [1, 1], 2: [1, 1, 1], 3: [1, 2, 2, 1], 4: [2, 4, 6, 4, 1], 5: [4, 7, 14, 12, 7, 1]}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_s2_codims_against_oracle(n):
    S, _ = build_S(2, "orth")
    for k in range(n + 1):
        assert partial_codimension(S, k, n - k) == oracle_codim(S, k, n - k) == S2_CODIMS[n][k]


def test_s2_degree_five_sector_against_oracle():
    S, _ = build_S(2, "orth")
    assert oracle_codim(S, 3, 2) == S2_CODIMS[5][3]


@pytest.mark.parametrize("t,kind", [(3, "orth"), (2, "sympl")])
def test_other_instances_against_oracle(t, kind):
    S, _ = build_S(t, kind)
    for n in (1, 2, 3):
        for k in range(n + 1):
            assert partial_codimension(S, k, n - k) == oracle_codim(S, k, n - k)


def test_s2_table_frozen_values():
    S, _ = build_S(2, "orth")
    table = codim_table(S, 6, cochar_max=5)
    for row in table.rows:
        assert [s.codim for s in row.sectors] == S2_CODIMS[row.n]
        assert row.c_gr == sum(comb(row.n, k) * c for k, c in enumerate(S2_CODIMS[row.n]))
        if row.n <= 5:
            assert [s.colength for s in row.sectors] == S2_COLENGTHS[row.n]
            assert row.l_gr == colength(row.sectors, S.dim)


def test_cocharacter_multiplicities_small_sector():
    S, _ = build_S(2, "orth")
    rep = cocharacter(S, 1, 2)
    assert rep.multiplicities == {(Partition((1,)), Partition((2,))): 1, (Partition((1,)), Partition((1, 1))): 1}
    assert rep.colength == 2


@pytest.mark.parametrize("t,kind,n", [(2, "orth", 5), (3, "orth", 4), (4, "sympl", 3), (2, "sympl", 4)])
def test_cocharacter_consistency_and_vanishing(t, kind, n):
    S, _ = build_S(t, kind)
    data = ideal_data(S)
    for k in range(n + 1):
        rep = cocharacter(S, k, n - k)
        total = sum(v * hook_dimension(a) * hook_dimension(b) for (a, b), v in rep.multiplicities.items())
        assert total == rep.codim
        assert all(v > 0 for v in rep.multiplicities.values())
        assert vanishing_violations(rep, data.d0, data.d1, data.m_hat) == []
        assert height_violations(rep, S.dim) == []


def test_abelian_superalgebra():
    ab = GradedAlgebra("abelian(2|1)", [EVEN, EVEN, ODD], {}, super_lie=True)
    assert partial_codimension(ab, 1, 0) == 1
    assert partial_codimension(ab, 0, 1) == 1
    for k, m in [(2, 0), (1, 1), (0, 2), (2, 1)]:
        assert partial_codimension(ab, k, m) == 0
    only_even = GradedAlgebra("abelian(1|0)", [EVEN], {}, super_lie=True)
    assert partial_codimension(only_even, 0, 1) == 0


def test_heisenberg_codims():
    h = GradedAlgebra("heis", [EVEN] * 3, {(0, 1): [(2, 1)], (1, 0): [(2, -1)]}, super_lie=True)
    assert [partial_codimension(h, n, 0) for n in (1, 2, 3)] == [1, 1, 0]


def _relabel(alg, perm):
    """Same algebra with basis vector i renamed perm[i]."""
    table = {(perm[i], perm[j]): [(perm[k], c) for k, c in prod] for (i, j), prod in alg.table.items()}
    parity = [0] * alg.dim
    for i, p in enumerate(alg.parity):
        parity[perm[i]] = p
    return GradedAlgebra(alg.name + "'", parity, table, super_lie=True, check=False)


@settings(max_examples=10, deadline=None)
@given(st.permutations(range(6)), st.sampled_from([(3, 0), (2, 1), (1, 2), (0, 3), (2, 2)]))
def test_codim_invariant_under_basis_relabelling(perm, sector):
    S, _ = build_S(2, "orth")
    assert partial_codimension(_relabel(S, perm), *sector) == partial_codimension(S, *sector)


def test_caps_are_enforced():
    S, _ = build_S(2, "orth")
    with pytest.raises(CapExceeded):
        partial_codimension(S, 4, 4)
    with pytest.raises(CapExceeded):
        cocharacter(S, 4, 3)
    assert partial_codimension(S, 1, 1, cap=2) == 1


def test_parallel_sectors_match_serial():
    S, _ = build_S(2, "orth")
    serial = [r.to_json() for r in sector_reports(S, 4, cocharacters=True)]
    parallel = [r.to_json() for r in sector_reports(S, 4, cocharacters=True, workers=2)]
    assert serial == parallel


def test_upper_bound_holds_on_s2():
    S, _ = build_S(2, "orth")
    data = ideal_data(S)
    codims = {(k, n - k): c for n, row in S2_CODIMS.items() for k, c in enumerate(row)}
    checks = upper_bound_check(codims, S.dim, data.d0, data.d1, data.m_hat)
    assert len(checks) == len(codims)
    assert all(c["holds"] for c in checks)
    assert upper_bound(2, 1, 6, 2, 2, 1) > 0


def test_colength_bound_value():
    assert colength_bound(6, 1) == 6 * 2 ** 43


def test_roots_display():
    assert nth_root(16, 4) == "2.000000"
    assert nth_root(0, 3) == "0"
    S, _ = build_S(2, "orth")
    row = graded_codimension(S, 3)
    assert row.c_gr == 16 and row.root == nth_root(16, 3)
