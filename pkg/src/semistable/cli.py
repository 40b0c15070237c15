"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bt_tree, lattice_lab, llc
from .mahler_space import branch_length, indicator, mahler_coeffs
from .padic_core import DEFAULT_PRECISION, INF, binom, check_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}")


def nu_value(text: str):
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return INF
    v = rational(t)
    if (2 * v).denominator != 1:
        raise argparse.ArgumentTypeError(f"nu must be a half-integer: {text!r}")
    return v


def nu_grid(text: str) -> list:
    return [nu_value(x) for x in text.split(",") if x.strip()]


def _fmt(v) -> str:
    if v == INF:
        return "inf"
    return str(v)


def _emit(args, payload, rows: Optional[list] = None, header: Optional[list] = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
        return
    if header:
        print("\t".join(header))
    for row in rows or []:
        print("\t".join(str(x) for x in row))


def _summary(desc) -> str:
    if isinstance(desc, llc.Irreducible):
        return f"ind w2^{desc.c}"
    (a, l1), (b, l2) = desc.summands
    return f"mu{l1.to_json()} w^{a} + mu{l2.to_json()} w^{b}"


# commands


def cmd_reduce(args) -> int:
    inp = llc.ReductionInput(args.p, args.k, args.L, args.L_sqrt)
    res = llc.reduce_detailed(inp)
    payload = res.to_json()
    payload["iwahori_llc"] = [b.to_json() for b in llc.iwahori_llc(res.descriptor)]
    rows = [
        ("nu", _fmt(res.nu)),
        ("branch", res.branch),
        ("i", res.index),
        ("descriptor", _summary(res.descriptor)),
        ("lambda", "" if res.lam is None else res.lam.to_json()),
        ("det_check", res.det_ok),
    ]
    _emit(args, payload, rows, ["field", "value"])
    return EXIT_OK if res.det_ok else EXIT_FAIL


def cmd_scan(args) -> int:
    out, rows = [], []
    ok = True
    for t in args.nu_grid:
        res = llc.reduce_detailed(llc.input_for_nu(args.p, args.k, t))
        ok &= res.det_ok
        out.append({"nu_target": _fmt(t), **res.to_json()})
        rows.append((_fmt(t), res.branch, res.index, res.descriptor.to_json()["type"], _summary(res.descriptor)))
    _emit(args, {"p": args.p, "k": args.k, "rows": out}, rows, ["nu", "branch", "i", "type", "descriptor"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hecke_verify(args) -> int:
    if not 0 <= args.r <= args.p - 1:
        raise UsageError("need 0 <= r <= p-1")
    failures = bt_tree.verify_relations(args.p, args.r, args.trials, random.Random(args.seed))
    payload = {"p": args.p, "r": args.r, "trials": args.trials, "seed": args.seed,
               "failures": failures, "all_pass": not any(failures.values())}
    rows = [(name, args.trials - n, n) for name, n in failures.items()]
    _emit(args, payload, rows, ["relation", "passed", "failed"])
    return EXIT_OK if payload["all_pass"] else EXIT_FAIL


def cmd_lab(args) -> int:
    try:
        lattice_lab.check_lab_preconditions(args.p, args.r, args.n, args.x)
    except ValueError as e:
        raise UsageError(str(e))
    rep = lattice_lab.verify_g1_congruence(args.p, args.r, args.n, args.x, args.precision)
    rows = [(r.a, r.j, r.passed, _fmt(r.margin_valuation)) for r in rep.records]
    _emit(args, rep.to_json(), rows, ["a", "j", "pass", "margin_valuation"])
    return EXIT_OK if rep.all_pass else EXIT_FAIL


def cmd_mahler(args) -> int:
    p, n = args.p, args.n
    if args.kind == "binomial":
        series = mahler_coeffs(lambda x: binom(x, n), args.count, p)
    else:
        series = mahler_coeffs(indicator(n, branch_length(n, p), p), args.count, p)
    vals = [None if a.is_zero else str(a.valuation) for a in series.coefficients]
    units = [None if a.is_zero else str(a.unit) for a in series.coefficients]
    rows = [(i, _fmt(INF) if v is None else v, u or "") for i, (v, u) in enumerate(zip(vals, units))]
    _emit(args, {"p": p, "kind": args.kind, "n": n, "valuations": vals, "units": units},
          rows, ["index", "valuation", "unit"])
    return EXIT_OK


# parser


def _common(sp, need_p: bool = True) -> None:
    sp.add_argument("-p", type=int, required=need_p, help="prime p >= 5")
    sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="p-adic precision N (default 8)")
    sp.add_argument("--format", choices=("json", "tsv"), default="json")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semistable", description="Mod p reductions of semi-stable representations.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("reduce", help="reduction of V_{k,L}")
    _common(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-L", type=rational, required=True, help="rational part of L, e.g. 3/2")
    sp.add_argument("--L-sqrt", type=rational, default=Fraction(0), dest="L_sqrt",
                    help="coefficient b in L = a + b sqrt(p)")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("scan", help="sweep the shifted valuation nu")
    _common(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--nu-grid", type=nu_grid, default=[], dest="nu_grid",
                    help="comma separated half-integers or 'inf'")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("hecke-verify", help="Iwahori-Hecke relations on random edge functions")
    _common(sp)
    sp.add_argument("-r", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.set_defaults(func=cmd_hecke_verify)

    sp = sub.add_parser("lab", help="congruences of the first Taylor jet of the witness")
    _common(sp)
    sp.add_argument("-r", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-x", type=rational, default=Fraction(-1))
    sp.set_defaults(func=cmd_lab)

    sp = sub.add_parser("mahler", help="Mahler coefficients of binomials and wavelet indicators")
    _common(sp)
    sp.add_argument("--kind", choices=("binomial", "indicator"), default="binomial")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--count", type=int, default=20)
    sp.set_defaults(func=cmd_mahler)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        check_prime(args.p)
        if args.precision < 2:
            raise UsageError("precision must be at least 2")
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
