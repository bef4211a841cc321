"""Full report for one algebra: codimension table, bound checks, discrepancy log."""
from __future__ import annotations

from .algebra import GradedAlgebra, bracket, nilpotency_index
from .codim import (codim_table, colength_bound, height_violations, upper_bound_check, vanishing_violations)
from .symfunc import hook_dimension
from .ut import ideal_data, named_elements, s_model, s_parameters, spec_string, z_graded_ideal
from .witness import claimed_value, proportionality, witness_W


def _is_s_family(alg: GradedAlgebra) -> bool:
    return (alg.construction or {}).get("family") == "S"


def discrepancy_log(alg: GradedAlgebra, witness_pq=(1, 1)) -> list[dict]:
    """Places where a stated formula and the computed value differ, or a reading had to be chosen.

    Only meaningful for the ``S(t)`` family; other algebras get an empty log.
    """
    if not _is_s_family(alg):
        return []
    t, kind = s_parameters(alg)
    N = named_elements(s_model(t, kind), t, kind)
    m = N.m
    log = []

    yz_x = all(bracket(N.Y[i], N.Z[j]) == (N.X[i] if i == j else alg.zero()) for i in range(m) for j in range(m))
    yz_z = all(bracket(N.Y[i], N.Z[j]) == (N.Z[i] if i == j else alg.zero()) for i in range(m) for j in range(m))
    log.append({"id": "yz_relation", "stated": "[Y_i,Z_j] = delta_ij Z_i", "computed": "[Y_i,Z_j] = delta_ij X_i",
                "stated_holds": yz_z, "computed_holds": yz_x, "asserted": "computed"})

    if m + 1 <= t:
        v = bracket(N.E[(m, m + 1)], N.X[m - 1])
        c = proportionality(v, N.E[(m, m + 1)]) if not v.is_zero() else 0
        log.append({"id": "adjacent_X_relation_range",
                    "stated": "-[E_{k,k+1},X_k] = E_{k,k+1}",
                    "computed": f"at k = m = {m}: [E_(m,m+1), X_m] = {c} E_(m,m+1)",
                    "asserted_range": f"1 <= k <= {m - 1}"})

    if t >= 2:
        p, q = witness_pq
        w = witness_W(p, q, t, kind)
        val = w.value("summed")
        claim = claimed_value(t, kind, q)
        top = bracket(N.E[(1, 2 * m)], N.Y0)
        sign = "+" if (not val.is_zero() and val == claim) else "-" if (not val.is_zero() and val == -claim) else None
        entry = {"id": "witness_value", "p": p, "q": q,
                 "stated": f"+-2^{q} [E_(1,{2 * m - 1}), Y0]",
                 "computed": {alg.labels[k]: str(c) for k, c in sorted(val.support.items())},
                 "sign": sign, "matches": sign is not None}
        if not top.is_zero():
            r = proportionality(val, top)
            entry["coefficient_over_[E_(1,2m),Y0]"] = None if r is None else str(r)
        else:
            entry["[E_(1,2m),Y0]_is_zero"] = True
        log.append(entry)

    ideal = z_graded_ideal(alg)
    log.append({"id": "power_definition", "index_all_bracketings": nilpotency_index(ideal, "all"),
                "index_left_normed": nilpotency_index(ideal, "left"), "used": "all bracketings"})
    log.append({"id": "upper_bound_relation", "stated": "=", "asserted": "<="})
    log.append({"id": "sector_degree", "reading": "P_(k,m) has degree k+m with k even and m odd variables"})
    return log


def build_report(alg: GradedAlgebra, n_max: int, *, cochar_max: int | None = None, workers: int = 1,
                 cap: int | None = None) -> dict:
    cochar_max = n_max if cochar_max is None else cochar_max
    kw = {} if cap is None else {"cap": cap}
    table = codim_table(alg, n_max, cochar_max=cochar_max, workers=workers, **kw)
    d = alg.dim
    out = {"algebra": alg.name, "dim": d, "dim_even": alg.parity.count(0), "dim_odd": alg.parity.count(1),
           "table": table.to_json()}
    checks = {"dimension_sum_consistency": True, "colength_bound": True, "height_bound": True}
    codims = {}
    for row in table.rows:
        for s in row.sectors:
            codims[(s.k, s.m)] = s.codim
            if s.colength is not None:
                total = sum(v * hook_dimension(a) * hook_dimension(b) for (a, b), v in s.multiplicities.items())
                checks["dimension_sum_consistency"] &= total == s.codim
                checks["height_bound"] &= not height_violations(s, d)
        if row.l_gr is not None:
            checks["colength_bound"] &= row.l_gr <= colength_bound(d, row.n)
    if _is_s_family(alg):
        t, kind = s_parameters(alg)
        data = ideal_data(alg)
        out["spec"] = spec_string(t, kind)
        out["ideal_data"] = {"d0": data.d0, "d1": data.d1, "m_hat": data.m_hat,
                             "index_all": data.index_all, "index_left": data.index_left}
        out["reference_exponent"] = 2 * t if t % 2 == 0 else 2 * t - 1
        checks["cells_below_vanishing"] = all(
            not vanishing_violations(s, data.d0, data.d1, data.m_hat)
            for row in table.rows for s in row.sectors if s.colength is not None)
        ub = upper_bound_check(codims, d, data.d0, data.d1, data.m_hat)
        out["upper_bound"] = ub
        checks["upper_bound"] = all(x["holds"] for x in ub)
    out["checks"] = checks
    out["discrepancies"] = discrepancy_log(alg)
    out["ok"] = all(checks.values())
    return out
