"""Acceptance gate: one test and one PASS/FAIL line per criterion.

Each criterion is checked at its stated tolerance (exact equality) and within
its stated runtime budget.  Criterion 4 is checked literally; see the
decisions ledger for why it does not hold.
"""
import time

import pytest

from pi_codim import suites


def timed(fn, **kwargs):
    start = time.perf_counter()
    result = fn(**kwargs)
    return result, time.perf_counter() - start


@pytest.fixture(scope="module")
def runs():
    return {}


def get(runs, name, **kwargs):
    key = (name, tuple(sorted(kwargs.items())))
    if key not in runs:
        runs[key] = timed(suites.SUITES[name], **kwargs)
    return runs[key]


def test_criterion_1_structure(runs, criterion):
    res, secs = get(runs, "structure")
    bad = [e["algebra"] for e in res["instances"] if not e["ok"]]
    ok = res["ok"] and secs < 60 and len(res["instances"]) == 8
    criterion("1 structure suite", ok, f"({len(res['instances'])} algebras, failing={bad}, {secs:.1f}s < 60s)")
    assert ok


def test_criterion_2_involutions(runs, criterion):
    res, secs = get(runs, "involution")
    ts = sorted({c["t"] for c in res["cases"]})
    ok = res["ok"] and secs < 10 and ts == list(range(1, 9))
    criterion("2 involution suite", ok, f"({len(res['cases'])} cases, t<=8, {secs:.2f}s < 10s)")
    assert ok


def test_criterion_3_nilpotent_ideal(runs, criterion):
    res, _ = get(runs, "ideal")
    codims = {e["algebra"]: (e["codim"], e["expected_codim"]) for e in res["instances"]}
    ok = res["ok"] and all(a == b for a, b in codims.values())
    ok = ok and all(e["ad_b_cubed_zero"] for e in res["instances"] if "ad_b_cubed_zero" in e)
    criterion("3 nilpotent ideal suite", ok, f"(codims {sorted(set(codims.values()))})")
    assert ok


def test_criterion_4_witnesses(runs, criterion):
    res, secs = get(runs, "witness")
    cases = res["cases"]
    matched = sum(c["matches_expected"] for c in cases)
    detail = (f"(value = +-2^q [E_(1,2m-1),Y0] in {matched}/{len(cases)} cases; "
              f"padded nonzero={res['padded_nonzero']}; formal==summed={res['alternation_consistent']})")
    ok = res["values_match_expected"] and res["padded_nonzero"] and res["alternation_consistent"]
    criterion("4 witness suite", ok, detail)
    assert res["values_match_expected"], "witness values differ from +-2^q [E_(1,2m-1), Y0]"
    assert res["padded_nonzero"], "some padded witness vanishes"
    assert res["alternation_consistent"]


def test_criterion_5_codimensions(runs, criterion):
    res, secs = get(runs, "codim", workers=1)
    res4, secs4 = get(runs, "codim", workers=4)
    checks = res["checks"]
    ns = [r["n"] for r in res["rows"]]
    with_cochar = [r["n"] for r in res["rows"] if "l_gr" in r]
    ok = (res["ok"] and ns == [1, 2, 3, 4, 5, 6] and with_cochar == [1, 2, 3, 4, 5]
          and secs < 30 * 60 and secs4 < 10 * 60 and res4 == res)
    criterion("5 codimension suite", ok, f"({sorted(k for k, v in checks.items() if v)}; "
                                         f"{secs:.1f}s serial, {secs4:.1f}s with 4 workers)")
    assert ok


def test_criterion_6_representations(runs, criterion):
    res, secs = get(runs, "representation")
    ok = (res["ok"] and secs < 300 and sorted(res["sum_of_squares"]) == list(range(1, 11))
          and sorted(res["hook_equals_syt_count"]) == list(range(1, 8))
          and sorted(res["quasi_idempotent"]) == list(range(1, 6))
          and res["dimension_bound"]["checked"] > 0)
    criterion("6 representation suite", ok,
              f"(dimension bound: {res['dimension_bound']['checked']} cases, {secs:.1f}s < 300s)")
    assert ok


def test_criterion_7_roots_report(runs, criterion):
    res, _ = get(runs, "roots")
    ok = (res["reference_exponent"] == 4 and res["asserted"] is False
          and "no numerical claim" in res["note"] and [r["n"] for r in res["roots"]] == list(range(1, 7))
          and all(float(r["root"]) > 0 for r in res["roots"]))
    criterion("7 root-sequence report", ok, "(" + ", ".join(r["root"] for r in res["roots"]) + "; reference 4)")
    assert ok


def test_criterion_8_determinism(runs, criterion):
    differing = []
    for name in sorted(suites.SUITES):
        first, _ = get(runs, name) if name not in ("codim", "roots") else get(runs, name, workers=1)
        again = suites.SUITES[name]()
        if suites.to_canonical_json(first) != suites.to_canonical_json(again):
            differing.append(name)
    for name in ("codim", "roots"):
        one = suites.to_canonical_json(suites.SUITES[name](workers=1))
        four = suites.to_canonical_json(suites.SUITES[name](workers=4))
        if one != four:
            differing.append(f"{name} (workers)")
    ok = not differing
    criterion("8 determinism", ok, f"(byte-identical JSON across runs and worker counts; differing={differing})")
    assert ok
