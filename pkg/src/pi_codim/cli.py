"""Command line interface: ``pi-codim build|verify|codim|cochar|witness|report|suite``."""
from __future__ import annotations

import argparse
import csv
import io
import sys

from . import algebra as alg_mod
from .algebra import ad_operator, find_anticommutativity_violation, find_jacobi_violation, nilpotency_index
from .codim import DEFAULT_CHARACTER_CAP, DEFAULT_DEGREE_CAP, codim_table, cocharacter, cost_estimate
from .report import build_report
from .suites import SUITES, block_formula_check, grading_violations, relation_check, to_canonical_json
from .ut import (build_S, build_from_spec, build_ut, find_involution_violation, involution, s_parameters,
                 spec_string, z_graded_ideal)
from .witness import claimed_value, padded_witness, witness_W

LONG_RUN = 10 ** 6


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return alg_mod.loads(fh.read())


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn_cost(alg, n_values) -> None:
    for n in n_values:
        total = sum(cost_estimate(alg, k, n - k) for k in range(n + 1))
        if total > LONG_RUN:
            print(f"note: degree {n} needs about {total} substitution evaluations", file=sys.stderr)


def cmd_build(args) -> int:
    alg, _ = build_from_spec(args.algebra)
    _emit(alg_mod.dumps(alg) + "\n", args.out)
    return 0


def verify_algebra(alg, samples: int = 100, seed: int = 0) -> dict:
    gv = grading_violations(alg)
    res = {"algebra": alg.name, "dim": alg.dim,
           "anticommutativity_violation": find_anticommutativity_violation(alg),
           "jacobi_violation": find_jacobi_violation(alg),
           "parity_violations": len(gv["parity"]), "degree_violations": len(gv["degree"])}
    ok = (res["anticommutativity_violation"] is None and res["jacobi_violation"] is None
          and not gv["parity"] and not gv["degree"])
    if (alg.construction or {}).get("family") == "S":
        t, kind = s_parameters(alg)
        ref, N = build_S(t, kind)
        res["matches_construction"] = ref == alg
        res["involution_violation"] = find_involution_violation(build_ut(t), involution(t, kind))
        res["block_formulas"] = block_formula_check(t, kind, samples, seed)
        res["relations"] = relation_check(t, kind)
        ideal = z_graded_ideal(ref)
        expected = 2 * t if t % 2 == 0 else 2 * t - 1
        res["ideal"] = {"codim": ideal.codim, "expected_codim": expected,
                        "nilpotency_index_all": nilpotency_index(ideal, "all"),
                        "nilpotency_index_left": nilpotency_index(ideal, "left")}
        ok = ok and res["matches_construction"] and res["involution_violation"] is None
        ok = ok and res["block_formulas"]["ok"] and res["relations"]["ok"]
        ok = ok and ideal.codim == expected and res["ideal"]["nilpotency_index_all"] is not None
        if t % 2:
            ad = ad_operator(N.b)
            res["ad_b_cubed_zero"] = (ad @ ad @ ad).is_zero()
            ok = ok and res["ad_b_cubed_zero"]
    res["ok"] = ok
    return res


def cmd_verify(args) -> int:
    res = verify_algebra(_load(args.algebra), args.samples, args.seed)
    _emit(to_canonical_json(res), args.out)
    return 0 if res["ok"] else 1


def cmd_codim(args) -> int:
    alg = _load(args.algebra)
    _warn_cost(alg, range(1, args.n_max + 1))
    table = codim_table(alg, args.n_max, cap=args.cap, workers=args.workers)
    if args.format == "json":
        _emit(to_canonical_json(table.to_json()), args.out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "m", "codim", "c_gr", "root"])
        for row in table.rows:
            for s in row.sectors:
                w.writerow([row.n, s.k, s.m, s.codim, row.c_gr, row.root])
        _emit(buf.getvalue(), args.out)
    return 0


def cmd_cochar(args) -> int:
    alg = _load(args.algebra)
    _warn_cost(alg, [args.n])
    reports = [cocharacter(alg, k, args.n - k, cap=args.cap).to_json() for k in range(args.n + 1)]
    total = sum(int(r["colength"]) for r in reports)
    _emit(to_canonical_json({"algebra": alg.name, "n": args.n, "sectors": reports, "l_gr": str(total)}), args.out)
    return 0


def cmd_witness(args) -> int:
    alg = _load(args.algebra)
    t, kind = s_parameters(alg)
    w = witness_W(args.p, args.q, t, kind)
    if args.pad:
        w = padded_witness(w, *args.pad)
    val = w.value(args.method)
    claim = claimed_value(t, kind, args.q)

    def as_json(e):
        return {e.algebra.labels[k]: str(c) for k, c in sorted(e.support.items())}

    sign = None
    if not val.is_zero():
        sign = "+" if val == claim else "-" if val == -claim else None
    res = {"algebra": spec_string(t, kind), "witness": w.name, "degree": w.degree, "sector": list(w.sector),
           "value": as_json(val), "nonzero": not val.is_zero(), "expected_up_to_sign": as_json(claim),
           "matches_expected": sign is not None, "sign": sign}
    _emit(to_canonical_json(res), args.out)
    return 0


def cmd_report(args) -> int:
    alg = _load(args.algebra)
    _warn_cost(alg, range(1, args.n_max + 1))
    res = build_report(alg, args.n_max, cochar_max=args.cochar_max, workers=args.workers, cap=args.cap)
    _emit(to_canonical_json(res), args.out)
    return 0


def cmd_suite(args) -> int:
    fn = SUITES[args.name]
    kwargs = {"workers": args.workers} if args.name in ("codim", "roots") else {}
    res = fn(**kwargs)
    _emit(to_canonical_json(res), args.out)
    return 0 if res["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pi-codim", description="Exact graded codimensions of Lie superalgebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build S(t) from a spec string such as 'S(t=4,inv=orth)'")
    p.add_argument("--algebra", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check the identities and relations of an algebra file")
    p.add_argument("algebra")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("codim", help="graded codimensions up to a degree")
    p.add_argument("algebra")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cap", type=int, default=DEFAULT_DEGREE_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("cochar", help="cocharacter multiplicities in one degree")
    p.add_argument("algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CHARACTER_CAP)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cochar)

    p = sub.add_parser("witness", help="evaluate the replicated witness W(p, q) in S(t)")
    p.add_argument("algebra")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--pad", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--method", choices=("summed", "formal"), default="summed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("report", help="codimension table, bound checks and discrepancy log")
    p.add_argument("algebra")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--cochar-max", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("suite", help="run one of the verification suites")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"pi-codim: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
