"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import bounds as B
from .code import (
    NetworkCode,
    SearchConfig,
    exhaustive_search,
    execute,
    format_code,
    parse_code,
    verify,
)
from .equivalence import count_W, partition
from .errors import BudgetExceeded, InvalidInput, InvalidNetwork, ParseError
from .function import TargetFunction, format_function, parse_function
from .instances import INSTANCE_NAMES, instance
from .network import Network, format_network, parse_network, split_sources
from .tree import InfeasiblePlan, construct, is_multi_edge_tree, tree_capacity_report

SCHEMA_VERSION = 1

# capacity of n2 / n2-prime for the arithmetic sum, known from earlier work
KNOWN_CAPACITY_NOTE = {
    "n2": "known capacity from prior literature: log_6 4 = 0.773706, strictly below this bound",
    "n2-prime": "known capacity from prior literature: log_6 4 = 0.773706, strictly below this bound",
}


class VerificationFailed(Exception):
    pass


# -- loading ---------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, 0, path, f"cannot read file: {exc.strerror}") from None


def _load(args, need_function: bool = True):
    """Network, function and optional bundled code from --instance or files."""
    code = None
    name = ""
    if getattr(args, "instance", None):
        bundle = instance(args.instance)
        net, f, code, name = bundle.network, bundle.function, bundle.code, bundle.name
        if getattr(args, "network", None):
            net = parse_network(_read(args.network), args.network)
        if getattr(args, "function", None):
            f = parse_function(_read(args.function), args.function)
    else:
        if not getattr(args, "network", None):
            raise InvalidInput("give --instance or --network")
        net = parse_network(_read(args.network), args.network)
        f = None
        if getattr(args, "function", None):
            f = parse_function(_read(args.function), args.function)
        elif need_function:
            raise InvalidInput("give --function")
    if getattr(args, "code", None):
        code = parse_code(_read(args.code), net, f, args.code)
    return net, f, code, name


def _cut(cut) -> str:
    return "{" + ",".join(cut) + "}"


def _set(items) -> str:
    return "{" + ",".join(str(i) for i in sorted(items)) + "}"


def _num(x: float):
    return None if math.isinf(x) else round(x, 6)


def _fmt_value(report: B.BoundReport) -> str:
    if not report.finite:
        return "inf"
    frac = B.exact_fraction(report.ratio, report.q)
    approx = f"{report.value:.6f}"
    if frac:
        num, den = frac
        return f"{num}" if den == 1 else f"{num}/{den} ({approx})"
    return f"{approx} (approx.)"


def _report_json(report: B.BoundReport, table: bool) -> dict:
    frac = B.exact_fraction(report.ratio, report.q) if report.finite else None
    out = {
        "kind": report.kind,
        "value": _num(report.value),
        "unbounded": not report.finite,
        "exact": None,
        "witness_cut": list(report.witness_cut) if report.witness_cut else None,
        "witness_count": report.witness_count,
        "witness_context": list(report.witness_context) if report.witness_context is not None else None,
        "optimal_cuts": [list(c) for c in report.optimal_cuts],
    }
    if report.finite:
        out["exact"] = {
            "cut_size": report.ratio.size,
            "count": report.ratio.count,
            "log_base": report.q,
            "fraction": list(frac) if frac else None,
        }
    if table:
        out["per_cut"] = [
            {
                "cut": list(r.cut),
                "size": r.size,
                "count": r.count,
                "ratio": _num(r.ratio.value(report.q)),
                "separated": sorted(r.separated),
            }
            for r in report.per_cut_table
        ]
    return out


def _print_report(report: B.BoundReport, table: bool, out) -> None:
    count_name = {"min-cut": "W", "min-cut-A": "R", "min-cut-K": "R"}.get(report.kind, "|image|")
    print(f"{report.kind} = {_fmt_value(report)}", file=out)
    if report.finite:
        print(
            f"  witness {_cut(report.witness_cut)}: |C| = {report.ratio.size}, "
            f"{count_name} = {report.ratio.count}, ratio |C| / log_{report.q} {count_name}",
            file=out,
        )
        if report.witness_context:
            print(f"  maximising context c* = {tuple(report.witness_context)}", file=out)
        if len(report.optimal_cuts) > 1:
            print(
                f"  all minimising cuts ({len(report.optimal_cuts)}): "
                + " ".join(_cut(c) for c in report.optimal_cuts),
                file=out,
            )
    else:
        print("  no cut constrains the rate", file=out)
    if table:
        print(f"  {'cut':<24} {'|C|':>4} {count_name:>7} {'ratio':>10}", file=out)
        for r in report.per_cut_table:
            ratio = "inf" if r.ratio.infinite else f"{r.ratio.value(report.q):.6f}"
            print(f"  {_cut(r.cut):<24} {r.size:>4} {r.count:>7} {ratio:>10}", file=out)


_BOUND_FUNCS = {
    "min-cut": B.min_cut_bound,
    "min-cut-a": B.min_cut_A,
    "min-cut-k": B.min_cut_K,
    "prop2": B.prop2_bound,
    "prop1": B.prop1_capacity,
}


def _bound(kind: str, net, f, args) -> B.BoundReport:
    fn = _BOUND_FUNCS[kind]
    kw = {}
    if kind != "prop1":
        kw["max_cut_size"] = getattr(args, "max_cut_size", None)
    if kind in ("min-cut", "min-cut-a", "prop2"):
        kw["irreducible_only"] = getattr(args, "irreducible", False)
    return fn(net, f, **kw)


# -- commands ---------------------------------------------------------------------

def cmd_bound(args, out) -> dict:
    net, f, _, name = _load(args)
    report = _bound(args.kind, net, f, args)
    note = KNOWN_CAPACITY_NOTE.get(name) if args.kind == "min-cut" else None
    if not args.json:
        _print_report(report, args.all_cuts, out)
        if note:
            print(f"  note: {note}", file=out)
    result = _report_json(report, args.all_cuts)
    if note:
        result["note"] = note
    return {"command": "bound", "network": net.name, **result}


def cmd_compare(args, out) -> dict:
    net, f, code, name = _load(args)
    rows = []
    kinds = ["min-cut", "min-cut-a", "min-cut-k", "prop2"]
    if net.s == 1:
        kinds.append("prop1")
    for kind in kinds:
        rows.append(_bound(kind, net, f, args))
    code_info = None
    if code is not None:
        res = verify(code, net, f)
        code_info = {
            "n": code.n,
            "k": code.k,
            "verified": res.ok,
            "rate": round(code.rate(net.edge_alphabet), 6),
        }
    if not args.json:
        print(f"{'bound':<16} {'value':>20}  witness", file=out)
        for r in rows:
            w = _cut(r.witness_cut) if r.witness_cut else "-"
            print(f"{r.kind:<16} {_fmt_value(r):>20}  {w}", file=out)
        if code_info:
            status = "verified" if code_info["verified"] else "FAILS"
            print(
                f"bundled ({code.n},{code.k}) code: rate {code_info['rate']:g}, {status}",
                file=out,
            )
    return {
        "command": "compare",
        "network": net.name,
        "bounds": [_report_json(r, False) for r in rows],
        "code": code_info,
    }


def _ints(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise InvalidInput(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_classes(args, out) -> dict:
    if args.cut:
        net, f, _, _ = _load(args)
        cut = [c for c in args.cut.replace(",", " ").split()]
        ca = net.cut_analysis(cut)
        if not ca.is_cut_set:
            raise InvalidInput("not a cut set: no source is separated")
        I, J = sorted(ca.separated_sources), sorted(ca.side_sources)
        c = _ints(args.context) if args.context else count_W(f, I, J)[1]
    else:
        if args.function:
            f = parse_function(_read(args.function), args.function)
        elif args.instance:
            f = instance(args.instance).function
        else:
            raise InvalidInput("give --function or --instance")
        I, J, c = _ints(args.I), _ints(args.J), _ints(args.context)
    p = partition(f, I, J, c)
    classes = p.classes()
    if not args.json:
        print(f"I = {_set(p.index_set)}, J = {_set(p.context_set)}, c = {tuple(p.context)}", file=out)
        for cid, members in enumerate(classes):
            print(f"class {cid}: " + ", ".join(str(m) for m in members), file=out)
        print(f"W = {p.class_count}", file=out)
    return {
        "command": "classes",
        "I": list(p.index_set),
        "J": list(p.context_set),
        "context": list(p.context),
        "class_count": p.class_count,
        "class_of": list(p.class_of),
        "classes": [[list(m) for m in members] for members in classes],
    }


def cmd_verify(args, out) -> dict:
    net, f, code, _ = _load(args)
    if code is None:
        raise InvalidInput("give --code (or an instance with a bundled code)")
    res = verify(code, net, f)
    result = {
        "command": "verify",
        "ok": res.ok,
        "checked": res.checked,
        "total": f.input_size ** (code.k * net.s),
        "counterexample": [list(r) for r in res.counterexample] if res.counterexample else None,
        "expected": list(res.expected) if res.expected else None,
        "got": list(res.got) if res.got else None,
    }
    if not args.json:
        if res.ok:
            print(f"{res.checked}/{result['total']} inputs correct", file=out)
        else:
            rows = "; ".join(" ".join(map(str, r)) for r in res.counterexample)
            print(
                f"counterexample x = [{rows}]: expected {res.expected}, decoder output {res.got}",
                file=out,
            )
    if not res.ok:
        raise VerificationFailed(result)
    return result


def _matrix(text: str) -> list[list[int]]:
    rows = [r for r in text.split(";") if r.strip()]
    try:
        return [[int(t) for t in r.replace(",", " ").split()] for r in rows]
    except ValueError:
        raise InvalidInput(f"cannot read input matrix {text!r}") from None


def cmd_simulate(args, out) -> dict:
    net, f, code, _ = _load(args)
    if code is None:
        raise InvalidInput("give --code (or an instance with a bundled code)")
    x = _matrix(args.input)
    trace = execute(code, net, x)
    expected = f.evaluate_block(x) if f is not None else None
    if not args.json:
        for eid, block in trace.blocks.items():
            print(f"{eid}: {' '.join(map(str, block))}", file=out)
        print(f"output: {trace.output}   f^(k)(x): {expected}", file=out)
    return {
        "command": "simulate",
        "blocks": {e: list(b) for e, b in trace.blocks.items()},
        "output": list(trace.output) if trace.output is not None else None,
        "expected": list(expected) if expected is not None else None,
    }


def cmd_search(args, out) -> dict:
    net, f, _, _ = _load(args)
    cfg = SearchConfig(
        budget=args.budget if args.budget is not None else SearchConfig.budget,
        method=args.method,
        symmetry=not args.no_symmetry,
    )
    res = exhaustive_search(net, f, args.n, args.k, cfg)
    if res.found and args.emit_code:
        Path(args.emit_code).write_text(format_code(res.code, net), encoding="utf-8")
    if not args.json:
        if res.found:
            print(f"found an ({args.n},{args.k}) code ({res.method} search, {res.explored} steps)", file=out)
            if not args.emit_code:
                out.write(format_code(res.code, net))
        else:
            print(
                f"no ({args.n},{args.k}) code exists: {res.method} search exhausted "
                f"after {res.explored} steps (raw encoder space {res.space_size})",
                file=out,
            )
    return {
        "command": "search",
        "n": args.n,
        "k": args.k,
        "found": res.found,
        "method": res.method,
        "explored": res.explored,
        "space_size": str(res.space_size),
        "code": format_code(res.code, net) if res.found else None,
    }


def cmd_tree(args, out) -> dict:
    net, f, _, _ = _load(args)
    if not is_multi_edge_tree(net):
        raise InvalidInput("network is not a multi-edge tree")
    result: dict = {"command": "tree"}
    if args.n is not None and args.k is not None:
        rep = tree_capacity_report(net, f, args.n, args.k)
    else:
        rep = tree_capacity_report(net, f)
    result["bound"] = _report_json(rep.bound, False)
    result["n"], result["k"] = rep.n, rep.k
    result["feasible"], result["verified"] = rep.feasible, rep.verified
    result["failure"] = rep.failure or None
    if rep.code is not None and args.emit_code:
        Path(args.emit_code).write_text(format_code(rep.code, net), encoding="utf-8")
    if not args.json:
        print(f"capacity (tree) = min-cut = {_fmt_value(rep.bound)}", file=out)
        if rep.n is not None:
            if rep.feasible:
                print(
                    f"({rep.n},{rep.k}) code constructed, "
                    f"{'verified' if rep.verified else 'FAILED verification'}",
                    file=out,
                )
            else:
                print(f"({rep.n},{rep.k}) infeasible: {rep.failure}", file=out)
    if rep.verified is False:
        raise VerificationFailed(result)
    return result


def cmd_split(args, out) -> dict:
    net, _, _, _ = _load(args, need_function=False)
    split = split_sources(net)
    text = format_network(split)
    if not args.json:
        out.write(text)
    return {"command": "split-sources", "network": text, "valid": split.validate().ok}


def cmd_instance(args, out) -> dict:
    bundle = instance(args.name)
    files = {}
    if args.emit:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        files["network"] = target / f"{args.name}.net"
        files["network"].write_text(format_network(bundle.network), encoding="utf-8")
        files["function"] = target / f"{args.name}.fn"
        files["function"].write_text(format_function(bundle.function), encoding="utf-8")
        if bundle.code is not None:
            files["code"] = target / f"{args.name}.code"
            files["code"].write_text(format_code(bundle.code, bundle.network), encoding="utf-8")
    if not args.json:
        if files:
            for kind, path in files.items():
                print(f"{kind}: {path}", file=out)
        else:
            out.write(format_network(bundle.network))
            out.write(format_function(bundle.function))
    return {
        "command": "instance",
        "name": args.name,
        "files": {k: str(v) for k, v in files.items()},
        "valid": bundle.network.validate().ok,
    }


# -- parser ---------------------------------------------------------------------------

def _source_args(p, function=True, code=False):
    p.add_argument("--instance", choices=INSTANCE_NAMES)
    p.add_argument("--network", metavar="FILE")
    if function:
        p.add_argument("--function", metavar="FILE")
    if code:
        p.add_argument("--code", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netcomp", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--threads", type=int, default=None,
        help="worker count (accepted for compatibility; analyses run single-threaded)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="one cut-set bound")
    _source_args(p)
    p.add_argument("--kind", choices=list(_BOUND_FUNCS), default="min-cut")
    p.add_argument("--irreducible", action="store_true", help="skip dominated cuts")
    p.add_argument("--max-cut-size", type=int, default=None)
    p.add_argument("--all-cuts", action="store_true", help="print the per-cut table")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("compare", help="all applicable bounds side by side")
    _source_args(p, code=True)
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--max-cut-size", type=int, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("classes", help="print an equivalence partition")
    _source_args(p)
    p.add_argument("--I", help="separated source indices, e.g. 1,3")
    p.add_argument("--J", help="context source indices")
    p.add_argument("--context", help="context symbols for J")
    p.add_argument("--cut", help="use I_C, J_C of this cut (edge ids)")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify", help="check a code on every input")
    _source_args(p, code=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run a code on one input matrix")
    _source_args(p, code=True)
    p.add_argument("--input", required=True, help='rows separated by ";", e.g. "1 1 0; 0 1 1"')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="exhaustive code search")
    _source_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--method", choices=("backtrack", "plain"), default="backtrack")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--emit-code", metavar="OUT")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tree", help="optimal codes on multi-edge trees")
    _source_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--emit-code", metavar="OUT")
    p.add_argument("--report", action="store_true", help="capacity report only")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("split-sources", help="give fed sources their own feeder nodes")
    _source_args(p, function=False)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("instance", help="built-in instances")
    p.add_argument("name", choices=INSTANCE_NAMES)
    p.add_argument("--emit", action="store_true", help="write network, function and code files")
    p.add_argument("--out", default=".", help="directory for --emit")
    p.set_defaults(func=cmd_instance)
    return parser


def _accept_json_anywhere(argv: list[str]) -> list[str]:
    # --json / --threads are global but also accepted after the subcommand
    argv = list(argv)
    front = []
    if "--json" in argv:
        argv.remove("--json")
        front.append("--json")
    if "--threads" in argv:
        i = argv.index("--threads")
        front += argv[i:i + 2]
        del argv[i:i + 2]
    return front + argv


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = _accept_json_anywhere(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.threads is None and os.environ.get("NETCOMP_THREADS"):
        args.threads = int(os.environ["NETCOMP_THREADS"])
    code = 0
    try:
        result = args.func(args, out)
    except VerificationFailed as exc:
        result, code = exc.args[0], 1
    except (ParseError, InvalidInput, InvalidNetwork) as exc:
        result, code = {"command": args.command, "error": str(exc)}, 2
        if not args.json:
            print(f"error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        result, code = {"command": args.command, "error": str(exc)}, 3
        if not args.json:
            print(f"refused: {exc}", file=sys.stderr)
    if args.json:
        result = {"schema": SCHEMA_VERSION, "exit_code": code, **result}
        json.dump(result, out, indent=2, sort_keys=True)
        out.write("\n")
    return code


def main() -> None:
    sys.exit(run())
