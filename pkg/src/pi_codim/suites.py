"""Verification suites.

Every suite returns a plain dictionary that serialises deterministically with
:func:`to_canonical_json`: no timings, exact integers and rationals written as
strings, lists in a fixed order.  ``ok`` at the top level summarises the suite.
"""
from __future__ import annotations

import json
import random
from fractions import Fraction
from math import factorial

import numpy as np

from .algebra import (EVEN, GradedAlgebra, Subspace, ad_operator, bracket, find_anticommutativity_violation,
                      find_jacobi_violation, nilpotency_index, power_series)
from .codim import (codim_table, colength_bound, height_violations, upper_bound_check, vanishing_violations)
from .poly import ExpansionTooLarge, evaluate
from .symfunc import (Tableau, character_table, class_size, hook_dimension, dimension_bound_violations, partitions,
                      quasi_idempotency_constant, rectangular_crossover, standard_tableaux, young_symmetrizer)
from .ut import (InvolutionKind, build_S, build_ut, find_involution_violation, ideal_data, involution,
                 s_model, s_parameters, spec_string, ut_units, z_graded_ideal)
from .witness import (claimed_value, degree_zero_containment, lower_bound_value, padded_witness,
                      proportionality, rectangular_shapes, witness_W, witness_a, witness_degree)

ORTH_TS = (2, 3, 4, 5, 6)
SYMPL_TS = (2, 4, 6)
REFERENCE_EXPONENT_S2 = 4


def to_canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _elem_json(e) -> dict:
    return {e.algebra.labels[k]: str(c) for k, c in sorted(e.support.items())}


def all_instances():
    return [(t, InvolutionKind.ORTHOGONAL) for t in ORTH_TS] + [(t, InvolutionKind.SYMPLECTIC) for t in SYMPL_TS]


# ---------------------------------------------------------------------------
# structure


def grading_violations(alg: GradedAlgebra) -> dict:
    """Basis pairs whose product leaves the expected parity or degree."""
    par, deg = alg.parity, alg.z_degree
    bad_parity, bad_degree = [], []
    for (i, j), prod in sorted(alg.table.items()):
        for k, _ in prod:
            if par[k] != (par[i] + par[j]) % 2:
                bad_parity.append((i, j))
            if deg is not None and deg[k] != deg[i] + deg[j]:
                bad_degree.append((i, j))
    return {"parity": bad_parity, "degree": bad_degree}


def _dense(vec, t):
    units = ut_units(t)
    out = np.full((t, t), Fraction(0), dtype=object)
    for k, c in vec.items():
        i, j = units[k]
        out[i - 1, j - 1] = c
    return out


def _dense_star(a: np.ndarray, kind: InvolutionKind) -> np.ndarray:
    t = a.shape[0]
    out = a[::-1, ::-1].T.copy()  # reflection along the secondary diagonal
    if kind is InvolutionKind.SYMPLECTIC:
        d = np.array([1 if i < t // 2 else -1 for i in range(t)], dtype=object)
        out = out * d[:, None] * d[None, :]
    return out


def _random_vec(rng, basis_vectors, lo=-3, hi=3):
    out: dict = {}
    for b in basis_vectors:
        c = rng.randint(lo, hi)
        if c:
            for k, x in b.items():
                out[k] = out.get(k, 0) + c * x
    return {k: Fraction(v) for k, v in out.items() if v}


def block_formula_check(t: int, kind, samples: int = 100, seed: int = 0) -> dict:
    """Compare algebra brackets with dense block-matrix formulas on random elements.

    Formulas checked (``*`` the involution, dense ``t x t`` products):
    even-odd upper ``AB + BA*``; even-odd lower ``-A*C - CA``;
    even-even ``AB - BA``; odd upper-odd lower ``diag(BC, CB)``.
    """
    kind = InvolutionKind.parse(kind)
    model = s_model(t, kind)
    rng = random.Random(f"{seed}-{t}-{kind.value}")
    d = model.r.dim
    units_basis = [{k: 1} for k in range(d)]
    fails = {"even_upper": 0, "even_lower": 0, "even_even": 0, "upper_lower": 0}
    for _ in range(samples):
        A = _random_vec(rng, units_basis)
        B = _random_vec(rng, units_basis)
        Yb = _random_vec(rng, model.plus_basis)
        Zc = _random_vec(rng, model.minus_basis)
        a_el, b_el = model.element(x=A), model.element(x=B)
        y_el, z_el = model.element(y=Yb), model.element(z=Zc)
        dA, dB, dY, dZ = _dense(A, t), _dense(B, t), _dense(Yb, t), _dense(Zc, t)
        sA = _dense_star(dA, kind)

        def blocks_dense(e):
            return [_dense(p, t) for p in model.blocks(e)]

        zero = np.full((t, t), Fraction(0), dtype=object)
        cases = {
            "even_upper": (bracket(a_el, y_el), [zero, dA.dot(dY) + dY.dot(sA), zero, zero]),
            "even_lower": (bracket(a_el, z_el), [zero, zero, -sA.dot(dZ) - dZ.dot(dA), zero]),
            "even_even": (bracket(a_el, b_el), [dA.dot(dB) - dB.dot(dA), zero, zero,
                                                -_dense_star(dA.dot(dB) - dB.dot(dA), kind)]),
            "upper_lower": (bracket(y_el, z_el), [dY.dot(dZ), zero, zero, dZ.dot(dY)]),
        }
        for name, (val, expected) in cases.items():
            got = blocks_dense(val)
            if not all(np.array_equal(g, e) for g, e in zip(got, expected)):
                fails[name] += 1
    return {"samples": samples, "failures": fails, "ok": not any(fails.values())}


def relation_check(t: int, kind) -> dict:
    """Exhaustive check of the relations among the distinguished elements.

    The relation ``[E_{k,k+1}, X_{k+1}] = -[E_{k,k+1}, X_k] = E_{k,k+1}`` and
    ``[E_{k,k+1}, X_j] = 0`` (``j != k, k+1``) are asserted for the indices where
    both ``X_k`` and ``X_{k+1}`` exist, ``1 <= k <= m-1``; the value at ``k = m`` is
    reported separately.
    """
    S, N = build_S(t, kind)
    m = N.m
    zero = S.zero()
    res = {}
    res["X_commutes_with_XYZ"] = all(bracket(N.X[i], v).is_zero() for i in range(m)
                                     for v in list(N.X) + list(N.Y) + list(N.Z))
    res["YZ_gives_delta_X"] = all(bracket(N.Y[i], N.Z[j]) == (N.X[i] if i == j else zero)
                                  for i in range(m) for j in range(m))
    res["YZ_gives_delta_Z"] = all(bracket(N.Y[i], N.Z[j]) == (N.Z[i] if i == j else zero)
                                  for i in range(m) for j in range(m))
    res["E_chain"] = all(bracket(N.E[(i, k)], N.E[(k, j)]) == N.E[(i, j)]
                         for i in range(1, t + 1) for k in range(i + 1, t + 1) for j in range(k + 1, t + 1))
    res["EX_adjacent"] = all(bracket(N.E[(k, k + 1)], N.X[k]) == N.E[(k, k + 1)]
                             and bracket(N.E[(k, k + 1)], N.X[k - 1]) == -N.E[(k, k + 1)]
                             for k in range(1, m))
    res["EX_other"] = all(bracket(N.E[(k, k + 1)], N.X[j - 1]).is_zero()
                          for k in range(1, m) for j in range(1, m + 1) if j not in (k, k + 1))
    res["I_centralizes_E"] = all(bracket(N.Ibig, e).is_zero() for e in N.E.values())
    res["I_Y0"] = bracket(N.Ibig, N.Y0) == 2 * N.Y0
    asserted = [k for k in res if k != "YZ_gives_delta_Z"]
    boundary = None
    if m >= 1 and m + 1 <= t:
        v = bracket(N.E[(m, m + 1)], N.X[m - 1])
        c = proportionality(v, N.E[(m, m + 1)]) if not v.is_zero() else Fraction(0)
        boundary = {"k": m, "coefficient_of_E_in_[E_{k,k+1},X_k]": str(c) if c is not None else "not proportional"}
    named_in_S = all(e.algebra is S for _, e in N.all_items())
    parities = (all(e.has_parity(EVEN) for e in list(N.X) + list(N.E.values()) + [N.Ibig])
                and all(e.has_parity(1) for e in list(N.Y) + list(N.Z) + [N.Y0] + ([N.b] if N.b else [])))
    res["named_parities"] = parities and named_in_S
    asserted.append("named_parities")
    return {"relations": res, "asserted": asserted, "boundary_k_equals_m": boundary,
            "ok": all(res[k] for k in asserted)}


def structure_suite(samples: int = 100, seed: int = 0) -> dict:
    out = []
    for t, kind in all_instances():
        S, N = build_S(t, kind)
        gv = grading_violations(S)
        entry = {
            "algebra": spec_string(t, kind),
            "dim": S.dim,
            "dim_even": S.parity.count(0),
            "dim_odd": S.parity.count(1),
            "anticommutativity_violation": find_anticommutativity_violation(S),
            "jacobi_violation": find_jacobi_violation(S),
            "parity_violations": len(gv["parity"]),
            "degree_violations": len(gv["degree"]),
            "block_formulas": block_formula_check(t, kind, samples, seed),
            "relations": relation_check(t, kind),
        }
        entry["ok"] = (entry["anticommutativity_violation"] is None and entry["jacobi_violation"] is None
                       and not gv["parity"] and not gv["degree"] and entry["dim"] == t * (t + 1)
                       and entry["dim_even"] == entry["dim_odd"] == t * (t + 1) // 2
                       and entry["block_formulas"]["ok"] and entry["relations"]["ok"])
        out.append(entry)
    return {"suite": "structure", "instances": out, "ok": all(e["ok"] for e in out)}


# ---------------------------------------------------------------------------
# involutions


def involution_suite(t_max: int = 8) -> dict:
    out = []
    for t in range(1, t_max + 1):
        r = build_ut(t)
        for kind in InvolutionKind:
            if kind is InvolutionKind.SYMPLECTIC and t % 2:
                continue
            bad = find_involution_violation(r, involution(t, kind))
            out.append({"t": t, "kind": kind.value, "violation": bad, "ok": bad is None})
    return {"suite": "involution", "cases": out, "ok": all(c["ok"] for c in out)}


# ---------------------------------------------------------------------------
# nilpotent ideal


def ideal_suite() -> dict:
    out = []
    for t, kind in all_instances():
        S, N = build_S(t, kind)
        ideal = z_graded_ideal(S)
        expected = 2 * t if t % 2 == 0 else 2 * t - 1
        idx_all = nilpotency_index(ideal, "all")
        idx_left = nilpotency_index(ideal, "left")
        data = ideal_data(S)
        entry = {"algebra": spec_string(t, kind), "codim": ideal.codim, "expected_codim": expected,
                 "is_ideal": ideal.is_ideal(), "nilpotency_index_all": idx_all, "nilpotency_index_left": idx_left,
                 "power_dims": [s.dim for s in power_series(ideal)], "d0": data.d0, "d1": data.d1,
                 "within_4t": idx_all is not None and idx_all <= 4 * t}
        ok = entry["codim"] == expected and entry["is_ideal"] and idx_all is not None
        if t % 2:
            ad = ad_operator(N.b)
            entry["ad_b_cubed_zero"] = (ad @ ad @ ad).is_zero()
            entry["ad_b_squared_zero"] = (ad @ ad).is_zero()
            ok = ok and entry["ad_b_cubed_zero"] and entry["within_4t"]
        entry["ok"] = ok
        out.append(entry)
    return {"suite": "ideal", "instances": out, "ok": all(e["ok"] for e in out)}


# ---------------------------------------------------------------------------
# witnesses


def witness_suite(ts=(2, 4), pq=((1, 1), (1, 2), (2, 1), (2, 2)), pad_max: int = 2,
                  expansion_budget: int = 200_000) -> dict:
    """Literal witness evaluations compared with the expected value ``+-2^q [E_{1,2m-1}, Y0]``."""
    cases = []
    for t in ts:
        m = t // 2
        for kind in InvolutionKind:
            if kind is InvolutionKind.SYMPLECTIC and t % 2:
                continue
            S, N = build_S(t, kind)
            top = bracket(N.E[(1, 2 * m)], N.Y0)
            for p, q in pq:
                w = witness_W(p, q, t, kind)
                summed = w.value("summed")
                formal = w.value("formal")
                plain = w.plain_value()
                claim = claimed_value(t, kind, q)
                sign = None
                if not summed.is_zero() and not claim.is_zero():
                    if summed == claim:
                        sign = "+"
                    elif summed == -claim:
                        sign = "-"
                expanded = None
                try:
                    poly = w.form.expand(expansion_budget)
                    expanded = evaluate(poly, w.assignment) == summed
                except ExpansionTooLarge:
                    pass
                pads = []
                for i in range(pad_max + 1):
                    for j in range(pad_max + 1):
                        pw = padded_witness(w, i, j)
                        pads.append({"i": i, "j": j, "nonzero": not pw.value("summed").is_zero()})
                ratio = proportionality(summed, top) if not top.is_zero() else None
                n, k = witness_degree(p, q, t)
                lam, mu = rectangular_shapes(p, q, t)
                cases.append({
                    "algebra": spec_string(t, kind), "p": p, "q": q, "n": n, "k": k,
                    "value": _elem_json(summed), "nonzero": not summed.is_zero(),
                    "expected_up_to_sign": _elem_json(claim), "matches_expected": sign is not None,
                    "sign": sign, "coefficient_over_[E_1_2m,Y0]": None if ratio is None else str(ratio),
                    "E_1_2m_Y0_is_zero": top.is_zero(),
                    "plain_equals_alternated": plain == summed,
                    "formal_equals_summed": formal == summed,
                    "expanded_equals_summed": expanded,
                    "padded": pads, "padded_all_nonzero": all(x["nonzero"] for x in pads),
                    "degree_zero_containment": degree_zero_containment(w),
                    "shapes": [list(lam.parts), list(mu.parts)], "lower_bound": str(lower_bound_value(p, q, t)),
                })
    small = []
    for m in (1, 2):
        for level in (1, 2, 3):
            w = witness_a(level, m)
            val = w.value("summed")
            small.append({"name": w.name, "value": _elem_json(val), "plain_equals_alternated": w.plain_value() == val,
                          "formal_equals_summed": w.value("formal") == val})
    a1_ok = all(witness_a(1, m).value() == (-1) ** m * build_S(2 * m)[1].E[(1, m + 1)] for m in (1, 2, 3))
    a2_ok = all(s["plain_equals_alternated"] for s in small if s["name"].startswith("a2"))
    values_ok = all(c["matches_expected"] for c in cases)
    pads_ok = all(c["padded_all_nonzero"] for c in cases)
    consistency_ok = all(c["formal_equals_summed"] and c["expanded_equals_summed"] is not False for c in cases)
    return {"suite": "witness", "cases": cases, "small_witnesses": small,
            "a1_value_ok": a1_ok, "a2_alternation_free": a2_ok,
            "values_match_expected": values_ok, "padded_nonzero": pads_ok,
            "alternation_consistent": consistency_ok,
            "ok": values_ok and pads_ok and consistency_ok}


# ---------------------------------------------------------------------------
# codimensions


def codim_suite(t: int = 2, kind="orth", n_max: int = 6, cochar_max: int = 5, workers: int = 1) -> dict:
    S, _ = build_S(t, kind)
    data = ideal_data(S)
    table = codim_table(S, n_max, cochar_max=cochar_max, workers=workers)
    d = S.dim
    rows = []
    codims = {}
    vanishing_ok = height_ok = colength_ok = consistency_ok = True
    for row in table.rows:
        rj = row.to_json()
        for s in row.sectors:
            codims[(s.k, s.m)] = s.codim
            if s.colength is not None:
                total = sum(v * hook_dimension(lam) * hook_dimension(mu) for (lam, mu), v in s.multiplicities.items())
                consistency_ok &= total == s.codim
                vanishing_ok &= not vanishing_violations(s, data.d0, data.d1, data.m_hat)
                height_ok &= not height_violations(s, d)
        if row.l_gr is not None:
            bound = colength_bound(d, row.n)
            rj["colength_bound"] = str(bound)
            rj["colength_bound_holds"] = row.l_gr <= bound
            colength_ok &= row.l_gr <= bound
        rows.append(rj)
    ub = upper_bound_check(codims, d, data.d0, data.d1, data.m_hat)
    ub_ok = all(x["holds"] for x in ub)
    return {"suite": "codim", "algebra": spec_string(t, kind), "dim": d,
            "ideal_data": {"d0": data.d0, "d1": data.d1, "m_hat": data.m_hat},
            "rows": rows, "upper_bound": ub,
            "checks": {"dimension_sum_consistency": consistency_ok, "colength_bound": colength_ok,
                       "cells_below_vanishing": vanishing_ok, "height_bound": height_ok, "upper_bound": ub_ok},
            "ok": consistency_ok and colength_ok and vanishing_ok and height_ok and ub_ok}


# ---------------------------------------------------------------------------
# representations


def representation_suite(square_max: int = 10, syt_max: int = 7, symmetrizer_max: int = 5,
                         orth_max: int = 7) -> dict:
    squares = {m: sum(hook_dimension(l) ** 2 for l in partitions(m)) == factorial(m) for m in range(1, square_max + 1)}
    syt = {}
    for w in range(1, syt_max + 1):
        syt[w] = all(hook_dimension(l) == sum(1 for _ in standard_tableaux(l)) for l in partitions(w))
    sym = {}
    for w in range(1, symmetrizer_max + 1):
        ok = True
        for lam in partitions(w):
            gamma = quasi_idempotency_constant(lam)
            for T in standard_tableaux(lam):
                e = young_symmetrizer(T)
                ok &= e * e == e * gamma
        sym[w] = ok
    orth = {}
    for w in range(1, orth_max + 1):
        table = character_table(w)
        cls = list(partitions(w))
        ok = True
        for c in cls:
            ok &= sum(table[(l, c)] ** 2 for l in cls) * class_size(c) == factorial(w)
        orth[w] = ok
    checked, bad = dimension_bound_violations(12, 4, 3)
    cross = {d: [{"s": r["s"], "dim": str(r["dim"]), "bound": str(r["bound"]), "exceeds": r["exceeds"]}
                 for r in rectangular_crossover(d, 12)] for d in (2, 3)}
    ok = all(squares.values()) and all(syt.values()) and all(sym.values()) and all(orth.values()) and not bad
    return {"suite": "representation", "sum_of_squares": squares, "hook_equals_syt_count": syt,
            "quasi_idempotent": sym, "column_orthogonality": orth,
            "dimension_bound": {"checked": checked, "violations": bad},
            "rectangular_crossover": cross, "ok": ok}


# ---------------------------------------------------------------------------
# root sequence


def roots_suite(n_max: int = 6, workers: int = 1) -> dict:
    S, _ = build_S(2, "orth")
    table = codim_table(S, n_max, workers=workers)
    return {"suite": "roots", "algebra": spec_string(2, "orth"),
            "roots": [{"n": r.n, "c_gr": str(r.c_gr), "root": r.root} for r in table.rows],
            "reference_exponent": REFERENCE_EXPONENT_S2,
            "note": "The roots are displayed next to the reference exponent for context only; "
                    "no numerical claim is made about this finite prefix.",
            "asserted": False, "ok": True}


SUITES = {
    "structure": structure_suite,
    "involution": involution_suite,
    "ideal": ideal_suite,
    "witness": witness_suite,
    "codim": codim_suite,
    "representation": representation_suite,
    "roots": roots_suite,
}
