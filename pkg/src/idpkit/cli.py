"""Command-line driver: solve, classify, reduce, certify, roundtrip.

Exit codes: 0 success/YES, 1 NO or a failed check, 2 budget exhausted,
3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cnf import enumerate_canonical, parse_dimacs, to_dimacs
from .graph import IdpInstance
from .io import FormatError, dumps_text, loads_json, parse_graph, parse_instance
from .patterns import (
    PatternError,
    classify_fixed_k,
    classify_variable_k,
    cycle,
    hgraph,
    is_h_free,
    longest_induced_path_at_most,
    parse_pattern,
    path,
    realize,
)
from .reductions.artifact import ReductionArtifact
from .reductions.cycle import CycleReductionError, cycle_to_idp
from .reductions.indset import is_to_idp
from .reductions.sat import DASH_CONVENTIONS, DEFAULT_DASH, sat_to_idp
from .solvers.base import SolveBudget, Status, check_solution
from .solvers.exact import solve_exact
from .solvers.poly import solve_dispatch
from . import suites

EXIT_YES, EXIT_NO, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3
MANIFEST = "manifest.json"
PROPERTIES = ("c6-free", "h-ell-free", "degree-bound", "induced-path-bound", "roundtrip")


class InputError(Exception):
    pass


def _budget(args) -> SolveBudget:
    return SolveBudget(args.budget_nodes, args.budget_seconds)


def _read_instance(path: str) -> IdpInstance:
    text = Path(path).read_text()
    if path.endswith(".json"):
        inst = loads_json(text)
        if not isinstance(inst, IdpInstance):
            raise InputError(f"{path}: no terminal pairs")
        return inst
    return parse_instance(text)


def cmd_solve(args) -> int:
    inst = _read_instance(args.instance)
    budget = _budget(args)
    if args.mode == "dispatch":
        if not args.pattern:
            raise InputError("--pattern is required with --mode dispatch")
        out = solve_dispatch(inst, parse_pattern(args.pattern), budget)
    else:
        out = solve_exact(inst, budget)
    print(out.status.value)
    print(f"route: {out.route}")
    if out.status is Status.YES:
        if not check_solution(inst, out.solution):
            raise AssertionError("solver returned an invalid witness")
        for i, p in enumerate(out.solution.paths, start=1):
            print(f"path {i}: " + " ".join(map(str, p)))
    print(f"nodes: {out.stats.nodes}")
    return {Status.YES: EXIT_YES, Status.NO: EXIT_NO, Status.BUDGET: EXIT_BUDGET}[out.status]


def cmd_classify(args) -> int:
    h = realize(parse_pattern(args.pattern))
    cls = classify_fixed_k(h) if args.regime == "fixed-k" else classify_variable_k(h)
    print(f"{cls.verdict.value} {cls.reason}")
    return 0


def _write_artifact(out: Path, stem: str, art: ReductionArtifact, extra: dict) -> dict:
    (out / f"{stem}.idp").write_text(art.instance_text())
    (out / f"{stem}.prov.json").write_text(art.dumps_sidecar())
    exp = art.expected_answer
    return {
        "instance": f"{stem}.idp",
        "sidecar": f"{stem}.prov.json",
        "reduction": art.meta["reduction"],
        "params": art.meta["params"],
        "vertices": art.instance.graph.n,
        "edges": art.instance.graph.edge_count,
        "expected": None if exp is None else ("YES" if exp else "NO"),
        "expected_source": art.meta.get("expected_source"),
        **extra,
    }


def _write_manifest(out: Path, items: list[dict], args) -> None:
    path = out / MANIFEST
    merged = {}
    if path.exists():
        for it in json.loads(path.read_text())["items"]:
            merged[it["instance"]] = it
    for it in items:
        merged[it["instance"]] = it
    manifest = {"seed": args.seed, "items": [merged[k] for k in sorted(merged)]}
    path.write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")


def cmd_reduce(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    items = []
    if args.source == "sat":
        if args.canonical:
            vmax, cmax = (int(t) for t in args.canonical.split(","))
            formulas = [(f"cnf{idx:03d}", f) for idx, f in enumerate(enumerate_canonical(vmax, cmax))]
        else:
            if not args.inputs:
                raise InputError("give DIMACS files or --canonical VARS,CLAUSES")
            formulas = [(Path(p).stem, parse_dimacs(Path(p).read_text())) for p in args.inputs]
        for stem, cnf in formulas:
            for ell in args.ell:
                art = sat_to_idp(cnf, ell, args.subdivisions, args.dash)
                name = f"{stem}-l{ell}"
                (out / f"{name}.cnf").write_text(to_dimacs(cnf))
                items.append(_write_artifact(out, name, art, {"source": f"{name}.cnf"}))
    else:
        if not args.inputs:
            raise InputError("give at least one graph file")
        for p in args.inputs:
            g = parse_graph(Path(p).read_text())
            stem = Path(p).stem
            if args.source == "is":
                if args.k is None:
                    raise InputError("--k is required for the is reduction")
                art = is_to_idp(g, args.k)
                name = f"{stem}-k{args.k}"
            else:
                if args.x is None or args.y is None:
                    raise InputError("--x and --y are required for the cycle reduction")
                art = cycle_to_idp(g, args.x, args.y, args.subdivisions, oracle_budget=_budget(args))
                name = f"{stem}-s{args.subdivisions}"
            (out / f"{name}.src").write_text(dumps_text(g))
            items.append(_write_artifact(out, name, art, {"source": f"{name}.src"}))
    for it in items:
        print(f"{it['instance']}: n={it['vertices']} m={it['edges']} expected={it['expected']}")
    _write_manifest(out, items, args)
    return 0


def _certify_item(corpus: Path, item: dict, prop: str, budget: SolveBudget) -> str:
    inst = parse_instance((corpus / item["instance"]).read_text())
    side = json.loads((corpus / item["sidecar"]).read_text())
    g = inst.graph
    kind = item["reduction"]
    params = item["params"]
    if prop == "c6-free":
        if kind == "is":
            return "SKIP"
        return "PASS" if is_h_free(g, cycle(6)) else "FAIL"
    if prop == "h-ell-free":
        if kind != "sat":
            return "SKIP"
        ok = all(is_h_free(g, hgraph(i)) for i in range(1, params["ell"] + 1))
        return "PASS" if ok else "FAIL"
    if prop == "degree-bound":
        if kind == "is":
            return "SKIP"
        created = [v for v, r in enumerate(side["provenance"]) if r.startswith(("xgad:", "ygad:"))]
        return "PASS" if all(g.degree(v) <= 3 for v in created) else "FAIL"
    if prop == "induced-path-bound":
        if kind != "is":
            return "SKIP"
        return "PASS" if longest_induced_path_at_most(g, 4 * params["k"] + 4) else "FAIL"
    if prop == "roundtrip":
        if item.get("expected") is None:
            return "SKIP"
        out = solve_exact(inst, budget)
        if out.status is Status.BUDGET:
            return "BUDGET"
        return "PASS" if out.is_yes == (item["expected"] == "YES") else "FAIL"
    raise InputError(f"unknown property {prop!r}")


def cmd_certify(args) -> int:
    corpus = Path(args.corpus)
    mpath = corpus / MANIFEST
    if not mpath.exists():
        raise InputError(f"no {MANIFEST} in {corpus}")
    props = [p.strip() for p in args.properties.split(",") if p.strip()]
    for p in props:
        if p not in PROPERTIES:
            raise InputError(f"unknown property {p!r}; choose from {', '.join(PROPERTIES)}")
    items = json.loads(mpath.read_text())["items"]
    budget = _budget(args)
    width = max([len("instance")] + [len(it["instance"]) for it in items])
    print(f"{'instance':<{width}}  " + "  ".join(f"{p:<18}" for p in props))
    failed = False
    for it in items:
        cells = [_certify_item(corpus, it, p, budget) for p in props]
        failed |= any(c in ("FAIL", "BUDGET") for c in cells)
        print(f"{it['instance']:<{width}}  " + "  ".join(f"{c:<18}" for c in cells))
    print("result: " + ("FAIL" if failed else "PASS"))
    return EXIT_NO if failed else 0


def cmd_roundtrip(args) -> int:
    budget = _budget(args)
    if args.suite == "peel":
        rep = suites.peel_suite(args.seed, args.count or 200, args.max_n or 11,
                                f=parse_pattern(args.pattern or "P3"), budget=budget)
    elif args.suite == "chairfree":
        rep = suites.chair_free_suite(args.seed, args.count or 200, args.max_n or 12, budget=budget)
    elif args.suite == "hole":
        rep = suites.hole_suite(args.seed, args.count or 300, args.max_n or 10, budget=budget)
    elif args.suite == "is":
        rep = suites.is_suite(args.seed, args.count or 150, args.max_n or 7, check_counts=False,
                              budget=budget)
    else:
        vmax, cmax = (int(t) for t in (args.sizes or "4,2").split(","))
        rep = suites.sat_suite(vmax, cmax, tuple(args.ell), budget=budget)
    print(rep.summary())
    if rep.failures:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        dump = out / f"roundtrip-{args.suite}-failures.json"
        dump.write_text(json.dumps(rep.failures, sort_keys=True, indent=1) + "\n")
        print(f"failures written to {dump}")
    return 0 if rep.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=20_000_000)
    common.add_argument("--budget-seconds", type=float, default=60.0)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=".")

    ap = argparse.ArgumentParser(prog="idp", description="k-Induced Disjoint Paths workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--mode", choices=("exact", "dispatch"), default="exact")
    p.add_argument("--pattern")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", parents=[common], help="classify a forbidden pattern")
    p.add_argument("pattern")
    p.add_argument("--regime", choices=("fixed-k", "variable-k"), default="fixed-k")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", parents=[common], help="compile source instances")
    p.add_argument("source", choices=("sat", "is", "cycle"))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--canonical", metavar="VARS,CLAUSES")
    p.add_argument("--ell", type=int, nargs="+", default=[1])
    p.add_argument("--dash", choices=DASH_CONVENTIONS, default=DEFAULT_DASH)
    p.add_argument("--subdivisions", type=int, default=0)
    p.add_argument("--k", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("certify", parents=[common], help="check corpus properties")
    p.add_argument("corpus")
    p.add_argument("--properties", default="c6-free,h-ell-free")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("roundtrip", parents=[common], help="run an oracle-agreement suite")
    p.add_argument("suite", choices=("sat", "is", "hole", "peel", "chairfree"))
    p.add_argument("--count", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--sizes", metavar="VARS,CLAUSES")
    p.add_argument("--ell", type=int, nargs="+", default=[1, 2])
    p.add_argument("--pattern")
    p.set_defaults(func=cmd_roundtrip)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, PatternError, CycleReductionError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
