"""Command-line entry point.

Exit status: 0 on pass, 1 on a failed check, 2 on malformed input.
JSON arguments may be given inline or as a path to a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core_bits import BitString, Window, eq_star_n
from .e0_invariance import (
    cantor_map,
    check_uniform,
    min_drop,
    min_drop_counterexample,
)
from .generic_elimination import (
    BudgetExhausted,
    ForcingInstance,
    InconsistentInstance,
    bit_of_g,
    constant,
    from_truth_table,
    never,
    run_compute_g,
)
from .perm_recovery import FinSupPermutation, OutOfWindowError, load_table, recover_inverse
from .pipeline import demo_theorem_homeo, demo_theorem_lax, run_indproc
from .theta_reconstruction import reconstruct_tables
from .tt_algebra import RULES, MissingTableError, OutputTable, TruthTableFunctional, builtin, render, tt_compose


class MalformedInput(ValueError):
    pass


def load_json(text: str):
    text = text.strip()
    if text.startswith("@"):
        text = text[1:]
    elif text[:1] in "[{" or text.lstrip("-").isdigit():
        return json.loads(text)
    try:
        return json.loads(Path(text).read_text())
    except OSError as exc:
        raise MalformedInput(f"cannot read {text!r}: {exc}") from None


def load_functional(text: str) -> TruthTableFunctional:
    if text in RULES:
        return builtin(text)
    return TruthTableFunctional.from_json(load_json(text))


def load_oracle(text: str):
    if text == "never":
        return never()
    kind, _, arg = text.partition(":")
    if kind == "constant":
        return constant(int(arg))
    if kind == "bit-of-g":
        return bit_of_g(load_table(load_json(arg)))
    if kind == "tt":
        return from_truth_table(load_functional(arg))
    raise MalformedInput(f"unknown oracle {text!r}; use never, constant:<bit>, bit-of-g:<json>, tt:<json>")


def _emit(data) -> None:
    sys.stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def cmd_recover_perm(args) -> int:
    k = load_table(load_json(args.k))
    m = args.m if args.m is not None else len(k)
    try:
        _emit({"inverse": recover_inverse(k, args.seed, m)})
    except OutOfWindowError as exc:
        _emit({"error": str(exc)})
        return 1
    return 0


def cmd_compute_g(args) -> int:
    db = {int(k): int(v) for k, v in load_json(args.db).items()} if args.db else {}
    inst = ForcingInstance(load_oracle(args.phi), BitString.parse(args.sigma), db)
    transcript = [] if args.transcript else None
    try:
        run = run_compute_g(inst, args.n, args.search_limit, transcript)
        status = 0
        out = {
            "n": args.n,
            "g": run.value,
            "source": "database" if run.from_database else "elimination",
            "interval": list(run.interval) if run.interval else None,
        }
    except (BudgetExhausted, InconsistentInstance) as exc:
        status = 1
        out = {"n": args.n, "error": type(exc).__name__, "message": str(exc)}
    if transcript is not None:
        Path(args.transcript).write_text("\n".join(transcript) + "\n")
    _emit(out)
    return status


def cmd_compose_tt(args) -> int:
    outer, inner = load_functional(args.outer), load_functional(args.inner)
    upto = args.upto if args.upto is not None else outer.arity
    try:
        _emit(tt_compose(outer, inner, upto).to_json())
    except MissingTableError as exc:
        _emit({"error": str(exc)})
        return 1
    return 0


def cmd_reconstruct(args) -> int:
    phi = load_functional(args.phi)
    table0 = OutputTable.from_json(load_json(args.table0))
    try:
        tables = reconstruct_tables(phi, table0, args.upto)
    except (MissingTableError, ValueError) as exc:
        _emit({"error": str(exc)})
        return 1
    _emit(
        {
            "tables": [t.to_json() for t in tables],
            "rendered": [render(t) for t in tables],
        }
    )
    return 0


def cmd_check_uniform(args) -> int:
    result = check_uniform(cantor_map(args.map), args.a, args.b, Window(args.window))
    if result is True:
        _emit({"map": args.map, "a": args.a, "b": args.b, "window": args.window, "passed": True})
        return 0
    _emit({"map": args.map, "window": args.window, "passed": False, "counterexample": result.to_json()})
    return 1


def cmd_counterexample_mindrop(args) -> int:
    x, y = min_drop_counterexample(args.b)
    fx, fy = min_drop(x), min_drop(y)
    ok = eq_star_n(x, y, 1) and not eq_star_n(fx, fy, args.b)
    _emit({"X": str(x), "Y": str(y), "a": 1, "b": args.b, "F(X)": str(fx), "F(Y)": str(fy), "verified": ok})
    return 0 if ok else 1


def cmd_demo(args) -> int:
    theta = FinSupPermutation.from_json(load_json(args.perm)) if args.perm else FinSupPermutation()
    if args.scenario == "lax":
        report = demo_theorem_lax(theta, args.window, args.search_limit, args.transcript)
    elif args.scenario == "homeo":
        report = demo_theorem_homeo(theta, args.window)
    else:
        report = run_indproc()
    sys.stdout.write(report.dumps())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantorkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recover-perm", help="recover theta^-1 from k = theta^-1 S theta")
    p.add_argument("--k", required=True, help="JSON array: table of k")
    p.add_argument("--seed", type=int, required=True, help="theta^-1(0)")
    p.add_argument("--m", type=int, help="window (default: length of k)")
    p.set_defaults(func=cmd_recover_perm)

    p = sub.add_parser("compute-g", help="compute g(n) by candidate elimination")
    p.add_argument("--phi", required=True, help="never | constant:<bit> | bit-of-g:<json> | tt:<json>")
    p.add_argument("--sigma", default="", help="forcing condition as a bit string")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--db", help='JSON object {"k": g(k)} for g(k) < |sigma|')
    p.add_argument("--search-limit", type=int, default=24)
    p.add_argument("--transcript", help="write the query transcript to this file")
    p.set_defaults(func=cmd_compute_g)

    p = sub.add_parser("compose-tt", help="substitute one truth-table functional into another")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--upto", type=int)
    p.set_defaults(func=cmd_compose_tt)

    p = sub.add_parser("reconstruct", help="rebuild Theta's tables from Phi and table 0")
    p.add_argument("--phi", required=True, help="functional JSON or a rule name")
    p.add_argument("--table0", required=True, help='JSON {"use": [...], "table": [...]}')
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("check-uniform", help="bounded uniform E0-invariance check")
    p.add_argument("--map", required=True, help="identity | min-drop | shift | perm:<json>")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--window", type=int, default=10)
    p.set_defaults(func=cmd_check_uniform)

    p = sub.add_parser("counterexample-mindrop", help="pair refuting uniformity of min-drop at a=1")
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_counterexample_mindrop)

    p = sub.add_parser("demo", help="end-to-end demonstrations")
    p.add_argument("scenario", choices=["lax", "homeo", "indproc"])
    p.add_argument("--perm", help='permutation JSON {"pairs": [[a, b], ...]}')
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--search-limit", type=int)
    p.add_argument("--transcript")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"cantorkit: malformed input: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
