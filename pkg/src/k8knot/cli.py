"""Command line entry point: ``k8knot <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys

from .diagram import GaussCode, InvalidGaussCode, linking_number
from .embedding import Embedding
from .graph import CycleFamily, complete_graph, hamiltonian_cycles, nu_audit
from .harness import (
    ExperimentConfig,
    TooManyRejections,
    anneal_min_knotted,
    flip_consistency_run,
    invariance_run,
    random_embedding,
)
from .invariant import analyze
from .knot import conway, fingerprint


def _mods(text: str) -> list[int]:
    mods = [int(x) for x in text.split(",") if x.strip()]
    if any(m < 2 for m in mods):
        raise argparse.ArgumentTypeError("moduli must be >= 2")
    return mods


def _family(graph, source: str) -> CycleFamily:
    if source == "hamiltonian":
        return hamiltonian_cycles(graph)
    with open(source) as fh:
        return CycleFamily.from_json(graph, fh.read())


def _emit(obj, out):
    text = json.dumps(obj, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_gen(args) -> int:
    try:
        emb, attempts = random_embedding(args.n, args.seed, args.range)
    except TooManyRejections as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        emb.dump(args.out)
    else:
        print(emb.to_json())
    print(f"attempts={attempts} projection={tuple(str(c) for c in emb.projection.d)} "
          f"crossings={len(emb.crossings)}", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    emb = Embedding.load(args.emb).validate()
    fam = _family(emb.graph, args.cycles)
    res = analyze(emb, fam, moduli=args.mods)
    _emit(res.to_dict(include_unknotted=args.all_cycles), args.out)
    if args.census_csv:
        res.write_census_csv(args.census_csv)
    for v in res.violations:
        print(v, file=sys.stderr)
    return 1 if res.violations else 0


def cmd_nu(args) -> int:
    m = re.fullmatch(r"[kK](\d+)", args.graph)
    if not m:
        print("error: --graph must look like k8", file=sys.stderr)
        return 2
    graph = complete_graph(int(m.group(1)))
    fam = _family(graph, args.cycles)
    report = nu_audit(graph, fam, args.n)
    if args.out:
        report.write_csv(args.out)
    print(f"nu1 tuples={len(report.nu1)} nu2 tuples={len(report.nu2)} "
          f"violations={len(report.violations)} verdict={report.verdict}")
    return 0 if report.holds else 1


def _config(args) -> ExperimentConfig:
    return ExperimentConfig(
        seed=args.seed, n_embeddings=args.count, coord_range=args.range, moduli=args.mods,
        n=args.n, out_json=args.out_json, out_csv=args.out_csv, workers=args.workers,
    )


def cmd_invariance(args) -> int:
    report = invariance_run(_config(args))
    print(json.dumps(report.summary, indent=1))
    for v in report.violations:
        print(v, file=sys.stderr)
    return report.exit_code


def cmd_flipcheck(args) -> int:
    report = flip_consistency_run(_config(args), flips_per_embedding=args.per_embedding)
    print(json.dumps(report.summary, indent=1))
    for v in report.violations:
        print(v, file=sys.stderr)
    return report.exit_code


def cmd_anneal(args) -> int:
    cfg = ExperimentConfig(seed=args.seed, coord_range=args.range, n=8)
    state = anneal_min_knotted(cfg, args.iters, t_start=args.t_start, t_end=args.t_end)
    _emit(state.to_dict(), args.out)
    print(f"best nabla-knotted Hamiltonian cycles: {state.best_objective}", file=sys.stderr)
    return 1 if state.best_analysis and state.best_analysis["violations"] else 0


def cmd_knot(args) -> int:
    try:
        code = GaussCode.parse(args.gauss)
    except InvalidGaussCode as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if code.n_components == 1:
        out = fingerprint(code).to_dict()
    else:
        out = {"components": code.n_components, "conway": list(conway(code).coefficients)}
        if code.n_components == 2:
            out["linking_number"] = linking_number(code)
    print(json.dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k8knot", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="sample a random straight-line embedding")
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--range", type=int, default=10_000)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="knot invariants of every cycle of an embedding")
    a.add_argument("--emb", required=True)
    a.add_argument("--cycles", default="hamiltonian", help="'hamiltonian' or a JSON file of vertex lists")
    a.add_argument("--mods", type=_mods, default=[2, 3, 6])
    a.add_argument("--out")
    a.add_argument("--census-csv")
    a.add_argument("--all-cycles", action="store_true", help="list unknotted cycles too")
    a.set_defaults(func=cmd_analyze)

    n = sub.add_parser("nu", help="audit nu1 mod n and nu2 mod 2n")
    n.add_argument("--graph", default="k8")
    n.add_argument("--cycles", default="hamiltonian")
    n.add_argument("--n", type=int, default=3)
    n.add_argument("--out")
    n.set_defaults(func=cmd_nu)

    for name, func, count, helptext in (
        ("invariance", cmd_invariance, 100, "sum of a2 mod n over random K8 embeddings"),
        ("flipcheck", cmd_flipcheck, 200, "diagram-level crossing flips"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--count", type=int, default=count)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--range", type=int, default=10_000)
        s.add_argument("--n", type=int, default=8)
        s.add_argument("--mods", type=_mods, default=[2, 3, 6])
        s.add_argument("--out-json")
        s.add_argument("--out-csv")
        s.add_argument("--workers", type=int, default=1)
        if name == "flipcheck":
            s.add_argument("--per-embedding", type=int, default=10)
        s.set_defaults(func=func)

    an = sub.add_parser("anneal", help="search for K8 embeddings with few knotted cycles")
    an.add_argument("--iters", type=int, default=5000)
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--range", type=int, default=10_000)
    an.add_argument("--t-start", type=float, default=2.0)
    an.add_argument("--t-end", type=float, default=0.05)
    an.add_argument("--out")
    an.set_defaults(func=cmd_anneal)

    k = sub.add_parser("knot", help="invariants of a Gauss code")
    k.add_argument("--gauss", required=True)
    k.set_defaults(func=cmd_knot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
