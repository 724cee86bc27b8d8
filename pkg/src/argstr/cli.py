"""Command line entry point: ``argstr <command> ...``.

Exit codes: 0 success, 1 domain failure (a contradicted expectation, no
convergence, an invalid theory), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .argument import enumerate_arguments, sort_key
from .dsl import RunReport, TheoryParseError, WagFormatError, arguments_to_dot, digest, dump_wag, parse_theory, parse_wag
from .model import validate_theory
from .principles import GeneratorConfig, Principle, sweep
from .semantics import (
    NoConvergence,
    NonUnitAttackWeight,
    UnknownArgumentId,
    argument_ids,
    grounded_labelling,
    h_categorizer_degrees,
    seed_graph_from_theory,
)
from .strength import CLAUSES, NAMED_METHODS, AggregationMethod, check_well_behaved, get_method, strength

DEFAULT_BUDGET = 8
SEED_ENV = "ARGSTR_SEED"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command line input; reported on stderr with exit code 2."""


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_theory(path: str):
    text = _read(path)
    try:
        return parse_theory(text, source=path).to_theory(), text
    except TheoryParseError as exc:
        raise InputError(str(exc)) from None


def _method(name: str):
    try:
        return get_method(name)
    except KeyError:
        raise InputError(f"unknown method {name!r}; try one of {', '.join(NAMED_METHODS)} or '<f>-<g>'") from None


def _emit(args, report: RunReport, text: str) -> None:
    sys.stdout.write(report.to_json() if args.json else text)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _basis_str(a) -> str:
    parts = []
    for item, n in sorted(a.basis.items(), key=lambda kv: str(kv[0])):
        name = item.id if hasattr(item, "id") else a.theory.label(item)
        parts.append(name if n == 1 else f"{name}^{n}")
    return "[" + ", ".join(parts) + "]"


# --------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    theory, text = _load_theory(args.file)
    problems = validate_theory(theory)
    results = {
        "valid": not problems,
        "rules": len(theory.rules),
        "axioms": len(theory.kb.axioms),
        "ordinary": len(theory.kb.ordinary),
        "violations": [{"code": v.code, "message": v.message, "subject": v.subject} for v in problems],
    }
    lines = [f"{args.file}: {'ok' if not problems else f'{len(problems)} problem(s)'}"]
    lines += [f"  {v}" for v in problems]
    _emit(args, RunReport("check", digest(text), results), "\n".join(lines) + "\n")
    return EXIT_OK if not problems else EXIT_FAIL


def _enumerated(args):
    theory, text = _load_theory(args.file)
    problems = validate_theory(theory)
    if problems:
        raise InputError("invalid theory: " + "; ".join(str(v) for v in problems))
    if args.budget < 0:
        raise InputError("--budget must be >= 0")
    method = _method(args.method)
    found = sorted(enumerate_arguments(theory, args.budget), key=sort_key)
    memo: dict = {}
    rows = []
    for (cid, alias), a in zip(argument_ids(found), found):
        rows.append((cid, alias, a, strength(method, a, memo)))
    return theory, text, method, rows


def cmd_enumerate(args) -> int:
    theory, text, method, rows = _enumerated(args)
    results = {
        "method": args.method,
        "budget": args.budget,
        "arguments": [
            {
                "id": cid,
                "alias": alias,
                "conclusion": str(a.conclusion),
                "tree": a.tree,
                "strict": a.is_strict,
                "basis": _basis_str(a),
                "strength": s,
            }
            for cid, alias, a, s in rows
        ],
    }
    if args.attacks:
        try:
            atts = json.loads(_read(args.attacks))
            edges = [(e["from"], e["to"], e.get("weight", 1.0)) for e in atts.get("attacks", atts)]
            graph = seed_graph_from_theory(theory, edges, method, args.budget)
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"bad attack file {args.attacks}: {exc}") from None
        results["wag"] = json.loads(dump_wag(graph))
    if args.dot:
        sys.stdout.write(arguments_to_dot((alias, a, s) for _, alias, a, s in rows))
        return EXIT_OK
    width = max((len(a.tree) for *_, a, _ in rows), default=4)
    lines = [f"{len(rows)} argument(s), budget {args.budget}, method {args.method}"]
    for cid, alias, a, s in rows:
        lines.append(f"{alias:>4}  {cid}  {a.tree:<{width}}  ⊢ {a.conclusion}  str={_fmt(s)}  basis={_basis_str(a)}")
    _emit(args, RunReport("enumerate", digest(text), results), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    theory, text, method, rows = _enumerated(args)
    wanted = set(args.argument or ())
    picked = [r for r in rows if not wanted or r[0] in wanted or r[1] in wanted or r[2].tree in wanted]
    missing = wanted - {x for r in picked for x in (r[0], r[1], r[2].tree)}
    if missing:
        raise InputError(f"no argument named {', '.join(sorted(missing))}")
    results = {"method": args.method, "strengths": {alias: s for _, alias, _, s in picked}}
    lines = [f"{alias}  {a.tree}  {_fmt(s)}" for _, alias, a, s in picked]
    _emit(args, RunReport("eval", digest(text), results), "\n".join(lines) + "\n")
    return EXIT_OK


def _load_wag(path: str):
    text = _read(path)
    try:
        return parse_wag(text), text
    except WagFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_degrees(args) -> int:
    graph, text = _load_wag(args.file)
    if args.semantics == "grounded":
        return _grounded(args, graph, text, "degrees")
    try:
        result = h_categorizer_degrees(graph, args.eps, args.max_iter)
    except NonUnitAttackWeight as exc:
        raise InputError(str(exc)) from None
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            payload = {"converged": False, "iterations": exc.iterations, "residual": exc.residual}
            sys.stdout.write(RunReport("degrees", digest(text), payload).to_json())
        return EXIT_FAIL
    results = {
        "semantics": "hcat",
        "converged": True,
        "iterations": result.iterations,
        "residual": result.residual,
        "degrees": result.degrees,
    }
    lines = [f"{n}  {_fmt(d)}" for n, d in result.degrees.items()]
    lines.append(f"# converged in {result.iterations} iteration(s), residual {result.residual:.3g}")
    _emit(args, RunReport("degrees", digest(text), results), "\n".join(lines) + "\n")
    return EXIT_OK


def _grounded(args, graph, text, command) -> int:
    labels = grounded_labelling(graph)
    results = {
        "semantics": "grounded",
        "in": [n for n, v in labels.items() if v == "in"],
        "out": [n for n, v in labels.items() if v == "out"],
        "undec": [n for n, v in labels.items() if v == "undec"],
    }
    lines = [f"{k}: {{{', '.join(results[k])}}}" for k in ("in", "out", "undec")]
    _emit(args, RunReport(command, digest(text), results), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_grounded(args) -> int:
    graph, text = _load_wag(args.file)
    return _grounded(args, graph, text, "grounded")


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return args.seed


def cmd_principles(args) -> int:
    methods = args.method or ["sp"]
    for m in methods:
        _method(m)
    try:
        principles = [Principle.lookup(p) for p in args.principle] if args.principle else list(Principle)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    seed = _seed(args)
    cfg = GeneratorConfig(seed=seed, budget=args.budget)
    verdicts = sweep(methods, principles, cfg, args.trials, workers=args.workers)

    bad = [v for v in verdicts.values() if v.discrepancy] if args.expect_paper else []
    results = {
        "trials": args.trials,
        "expect_paper": args.expect_paper,
        "verdicts": [v.to_dict() for v in verdicts.values()],
        "contradictions": len(bad),
    }
    lines = []
    for v in verdicts.values():
        flag = "  << contradicts expected" if args.expect_paper and v.discrepancy else ""
        lines.append(
            f"{v.method:<24} {v.principle.value:<30} {v.status:<17} expected={v.expected.value:<15} "
            f"applicable={v.applicable}/{v.trials}{flag}"
        )
        if v.witness is not None and args.witness:
            w = v.witness.to_dict()
            lines += ["    " + ln for ln in w["theory"].splitlines()]
            lines += [f"    {x['role']}: {x['tree']}  str={_fmt(x['strength'])}" for x in w["arguments"]]
    if args.expect_paper:
        lines.append(f"# {len(bad)} contradiction(s) with the expected results")
    report = RunReport("principles", digest(json.dumps([methods, [p.value for p in principles], args.trials, args.budget])), results, seed=seed)
    _emit(args, report, "\n".join(lines) + "\n")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_wellbehaved(args) -> int:
    method = _method(args.method)
    if not isinstance(method, AggregationMethod):
        method = get_method({"sp": "prod-prod", "wl": "min-min"}[args.method])
    verdict = check_well_behaved(method, force_grid=args.grid)
    results = verdict.to_dict()
    lines = [f"{args.method}: {verdict.status}"]
    for c in verdict.clauses:
        mark = "ok" if c.ok else "FAIL"
        extra = f"  witness={json.dumps(c.witness)}" if c.witness else ""
        lines.append(f"  clause {c.clause}: {mark:<4} {CLAUSES[c.clause]}{extra}")
    _emit(args, RunReport("wellbehaved", digest(args.method), results), "\n".join(lines) + "\n")
    return EXIT_FAIL if verdict.status == "falsified" else EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="argstr", description="Weighted structured argumentation toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable JSON report")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "validate a theory file")
    p.add_argument("file")

    for name, func, text in (
        ("enumerate", cmd_enumerate, "list every argument of a theory with its strength"),
        ("eval", cmd_eval, "strength of selected arguments"),
    ):
        p = add(name, func, text)
        p.add_argument("file")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max rule applications per argument (default %(default)s)")
        p.add_argument("--method", default="sp", help="strength method (default %(default)s)")
        if name == "enumerate":
            p.add_argument("--dot", action="store_true", help="draw the inference trees as Graphviz DOT")
            p.add_argument("--attacks", metavar="FILE", help="JSON attack list; adds the seeded graph to the report")
        else:
            p.add_argument("-a", "--arg", dest="argument", action="append", help="alias (A1), canonical id or tree; repeatable, all if omitted")

    p = add("degrees", cmd_degrees, "acceptability degrees of a weighted argumentation graph")
    p.add_argument("file")
    p.add_argument("--semantics", choices=("hcat", "grounded"), default="hcat")
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=10_000)

    p = add("grounded", cmd_grounded, "grounded extension of a graph")
    p.add_argument("file")

    p = add("principles", cmd_principles, "search for counterexamples to the strength principles")
    p.add_argument("--method", action="append", help="method name; repeat for several (default sp)")
    p.add_argument("--principle", action="append", help="principle name; repeat for several (default all)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0, help=f"generator seed (overridden by ${SEED_ENV})")
    p.add_argument("--budget", type=int, default=GeneratorConfig.budget, help="enumeration budget per random theory")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--expect-paper", action="store_true", help="fail if a result contradicts the known theorem table")
    p.add_argument("--witness", action="store_true", help="print witnesses in the text report")

    p = add("wellbehaved", cmd_wellbehaved, "check the well-behavedness clauses of an aggregation method")
    p.add_argument("--method", required=True)
    p.add_argument("--grid", action="store_true", help="run the grid search even for certified methods")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownArgumentId as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
