"""Command line entry point: ``ods {run,adversary,opt,check,audit,sweep}``.

Machine-readable output goes to stdout or to the files named by flags;
one-line human summaries go to stderr. Exit codes: 0 success, 1 a check or
audit failed, 2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .adversaries import ADVERSARIES
from .algorithms import AlgorithmSpec, run_algorithm
from .charging import ModelViolation, audit_bounded_degree, audit_even
from .graph import Graph, GraphError
from .harness import POLICIES, SWEEP_CLASSES, ExperimentConfig, default_algorithm, random_connected_order, sweep, within_bound
from .opt import DEFAULT_OPT_CAP, OptCapExceeded, brute_force_opt
from .recognize import certificate_name, certify, is_cactus, is_tree
from .revelation import OnlineInstance, trace_from_dict

CHECK_CLASSES = ("tree", "cactus", "delta", "bounded", "claw", "k1t-free", "threshold",
                 "planar-bipartite", "sp", "tw<=2")
PARAM_CLASSES = ("delta", "bounded", "claw", "k1t-free")


class InputError(Exception):
    """Malformed input; reported with exit code 2."""


def _load_json(path: str, what: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{what}: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def _load_graph(path: str) -> tuple[Graph, dict]:
    data = _load_json(path, "instance")
    try:
        return Graph.from_dict(data), data
    except GraphError as exc:
        raise InputError(f"instance: {exc}") from None


def _load_instance(args) -> OnlineInstance:
    g, data = _load_graph(args.instance)
    if "order" in data:
        try:
            return OnlineInstance.from_dict(data)
        except GraphError as exc:
            raise InputError(f"instance: {exc}") from None
    return OnlineInstance(g, tuple(random_connected_order(g, args.seed, args.order_policy)))


def _algorithm(args) -> AlgorithmSpec:
    script = None
    if args.algorithm == "scripted":
        if not args.script:
            raise InputError("scripted algorithm needs --script")
        script = _load_json(args.script, "script")
        if not isinstance(script, list) or not all(isinstance(x, bool) for x in script):
            raise InputError("script: top-level value must be a list of booleans")
    try:
        return AlgorithmSpec.parse(args.algorithm, args.k, script)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(payload: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _note(msg: str):
    print(msg, file=sys.stderr)


# -- subcommands ----------------------------------------------------------------

def cmd_run(args) -> int:
    inst = _load_instance(args)
    spec = _algorithm(args)
    try:
        trace = run_algorithm(inst, spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.out:
        _emit(json.dumps(inst.to_dict(), sort_keys=True) + "\n", args.out)
    _emit(_dumps(trace.to_dict()), args.trace)
    _note(f"{spec.label}: selected {len(trace.selected)} of {inst.n}, feasible={trace.feasible}")
    return 0


def cmd_adversary(args) -> int:
    spec = _algorithm(args)
    try:
        outcome = ADVERSARIES[args.cls](spec, args.param)
    except ValueError as exc:
        raise InputError(f"--param: {exc}") from None
    report = outcome.report()
    if args.out:
        _emit(json.dumps(outcome.instance.to_dict(), sort_keys=True) + "\n", args.out)
    if args.trace:
        _emit(_dumps(outcome.trace.to_dict()), args.trace)
    _emit(_dumps(report), args.report)
    _note(f"{args.cls} vs {spec.label}: ALG={report['alg']} witness={report['opt_witness_size']} "
          f"ratio={report['ratio']} bound={report['ratio_bound']} holds={report['bound_holds']}")
    ok = report["class_ok"] and report["witness_dominating"] and report["bound_holds"] is not False
    return 0 if ok else 1


def cmd_opt(args) -> int:
    g, _ = _load_graph(args.instance)
    try:
        opt = brute_force_opt(g, args.opt_cap)
    except OptCapExceeded as exc:
        raise InputError(f"--opt-cap: {exc}") from None
    _emit(json.dumps({"opt": sorted(opt), "size": len(opt)}) + "\n", args.out)
    return 0


def cmd_check(args) -> int:
    g, data = _load_graph(args.instance)
    if args.cls in PARAM_CLASSES and args.param is None:
        raise InputError(f"class {args.cls} needs --param")
    passed = certify(g, args.cls, args.param)
    out = {"class": args.cls, "certificate": certificate_name(args.cls, args.param), "pass": passed}
    if "order" in data:
        try:
            OnlineInstance.from_dict(data)
            out["order_valid"] = True
        except GraphError:
            out["order_valid"] = False
            passed = False
    _emit(json.dumps(out, sort_keys=True) + "\n", args.out)
    _note("pass" if passed else "fail")
    return 0 if passed else 1


def cmd_audit(args) -> int:
    inst = _load_instance(args)
    data = _load_json(args.trace, "trace")
    try:
        trace = trace_from_dict(inst, data)
    except GraphError as exc:
        raise InputError(f"trace: {exc}") from None
    g = inst.graph
    if args.opt == "file":
        if not args.opt_file:
            raise InputError("--opt file needs --opt-file")
        raw = _load_json(args.opt_file, "opt")
        opt = raw.get("opt") if isinstance(raw, dict) else raw
        if not isinstance(opt, list) or not all(isinstance(x, int) for x in opt):
            raise InputError("opt: field 'opt' must be a list of vertex ids")
    else:
        try:
            opt = sorted(brute_force_opt(g, args.opt_cap))
        except OptCapExceeded as exc:
            raise InputError(f"--opt-cap: {exc}") from None
    try:
        if args.scheme == "even":
            report = audit_even(trace, opt)
            limit = Fraction(2) if is_tree(g) else Fraction(5, 2) if is_cactus(g) else None
            report["concentration_limit"] = None if limit is None else _frac(limit)
            over = limit is not None and Fraction(report["concentration"]) > limit
        else:
            if args.delta is None:
                raise InputError("bounded-degree scheme needs --delta")
            report = audit_bounded_degree(trace, opt, args.delta)
            over = False
    except ModelViolation as exc:
        report = {"scheme": args.scheme, "conserved": False, "concentration": None,
                  "violations": [{"kind": "model", "message": str(exc)}]}
        over = False
    except ValueError as exc:
        raise InputError(f"opt: {exc}") from None
    ok = report["conserved"] and not report["violations"] and not over
    report["pass"] = ok
    _emit(_dumps(report), args.report)
    _note(f"audit {args.scheme}: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    algs = (_algorithm(args),) if args.algorithm else ()
    policies = (args.order_policy,) if args.order_policy else POLICIES
    try:
        config = ExperimentConfig(args.cls, args.n_min, args.n_max, args.param, algs,
                                  args.seed, args.reps, policies, args.opt_cap)
        report = sweep(config)
    except (ValueError, OptCapExceeded) as exc:
        raise InputError(str(exc)) from None
    if args.out:
        _emit(report.to_csv(), args.out)
    _emit(report.to_json(), args.report)
    target = default_algorithm(args.cls, args.param).label
    bad = [r for r in report.runs if r.algorithm == target
           and (not r.trace.feasible or not within_bound(args.cls, args.param, r.ratio))]
    for alg, agg in report.aggregates().items():
        _note(f"{alg}: runs={agg['count']} infeasible={agg['infeasible']} max={agg['max_ratio']}")
    return 1 if bad else 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ods", description="Online dominating set experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    def algo_flags(sp, required=True):
        sp.add_argument("--algorithm", choices=["greedy", "k-dominate", "accept-all", "scripted"],
                        required=required, default=None)
        sp.add_argument("--k", type=int, help="threshold for k-dominate")
        sp.add_argument("--script", help="JSON list of booleans for the scripted algorithm")

    def instance_flags(sp):
        sp.add_argument("--instance", required=True, help="instance JSON")
        sp.add_argument("--order-policy", choices=POLICIES, default="bfs",
                        help="used when the instance has no order")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("run", help="play an algorithm on an instance")
    instance_flags(sp)
    algo_flags(sp)
    sp.add_argument("--trace", help="write the trace here instead of stdout")
    sp.add_argument("--out", help="write the instance (with its order) here")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("adversary", help="play an adaptive adversary against an algorithm")
    sp.add_argument("--class", dest="cls", choices=sorted(ADVERSARIES), required=True)
    sp.add_argument("--param", type=int, required=True)
    algo_flags(sp)
    sp.add_argument("--out", help="instance JSON output")
    sp.add_argument("--trace", help="trace JSON output")
    sp.add_argument("--report", help="report JSON output (default stdout)")
    sp.set_defaults(func=cmd_adversary)

    sp = sub.add_parser("opt", help="exact minimum dominating set")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--opt-cap", type=int, default=DEFAULT_OPT_CAP)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_opt)

    sp = sub.add_parser("check", help="recognize a graph class")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--class", dest="cls", choices=CHECK_CLASSES, required=True)
    sp.add_argument("--param", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("audit", help="run a charging audit on a trace")
    instance_flags(sp)
    sp.add_argument("--trace", required=True)
    sp.add_argument("--scheme", choices=["even", "bounded-degree"], default="even")
    sp.add_argument("--opt", choices=["brute", "file"], default="brute")
    sp.add_argument("--opt-file")
    sp.add_argument("--delta", type=int)
    sp.add_argument("--opt-cap", type=int, default=DEFAULT_OPT_CAP)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("sweep", help="random-instance ratio sweep")
    sp.add_argument("--class", dest="cls", choices=SWEEP_CLASSES, required=True)
    sp.add_argument("--param", type=int)
    algo_flags(sp, required=False)
    sp.add_argument("--order-policy", choices=POLICIES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--reps", type=int, default=100)
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--opt-cap", type=int, default=DEFAULT_OPT_CAP)
    sp.add_argument("--out", help="CSV output")
    sp.add_argument("--report", help="JSON output (default stdout)")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"ods {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
