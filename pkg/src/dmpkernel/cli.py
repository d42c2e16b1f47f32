"""``dmpkernel`` command line.

Exit status: 0 on success, 1 when a checked bound or suite fails, 2 on bad
usage or unreadable input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Any

from .bounds import approximate_dmp, ratio_report, treewidth_bound_report
from .core import PhyloTree, check_same_taxa, trees_equal
from .errors import InternalBoundViolation, PhyloError
from .harness import GENERATORS, SUITES, InstanceSpec, RunReport, SuiteConfig, default_seed, generate_instance, run_suite
from .kernel import DEFAULT_PARAMS, alpha_constant, alpha_tables, kernel_witness, render_alpha_tables
from .newick import parse_character_file, read_tree, write_newick
from .oracle import decide_dmp, display_graph, exact_dmp, exact_dtbr, exact_treewidth
from .parsimony import parsimony_score
from .reduction import reduce


class _Failed(Exception):
    """A verified claim did not hold."""


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _two_trees(args: argparse.Namespace) -> tuple[PhyloTree, PhyloTree]:
    t1, t2 = read_tree(args.tree1), read_tree(args.tree2)
    check_same_taxa(t1, t2)
    return t1, t2


def cmd_parse(args):
    tree = read_tree(args.tree)
    _emit(args, {"n": tree.n, "newick": write_newick(tree)}, write_newick(tree))


def cmd_reduce(args):
    t1, t2 = _two_trees(args)
    r1, r2, trace = reduce(t1, t2)
    payload = json.loads(trace.to_json())
    text = f"{write_newick(r1)}\n{write_newick(r2)}\n# {t1.n} -> {r1.n} taxa in {len(trace.steps)} steps"
    _emit(args, payload, text)


def cmd_score(args):
    tree = read_tree(args.tree)
    with open(args.character, encoding="utf-8") as fh:
        chi = parse_character_file(fh.read(), tree.taxa)
    score, phi = parsimony_score(tree, chi)
    _emit(args, {"score": score, "extension": dict(sorted(phi.states.items()))}, f"{score}\n{phi.to_csv()}".rstrip())


def cmd_dmp_exact(args):
    t1, t2 = _two_trees(args)
    value, chi = exact_dmp(t1, t2, cap=args.cap)
    _emit(args, {"value": value, "certificate": {"character": dict(sorted(chi.items()))}}, f"{value}\n{chi.to_csv()}".rstrip())


def cmd_dtbr_exact(args):
    t1, t2 = _two_trees(args)
    value, forest = exact_dtbr(t1, t2, cap=args.cap)
    blocks = [sorted(b) for b in forest.blocks]
    _emit(args, {"value": value, "certificate": {"forest": blocks}}, f"{value}\n" + "\n".join(" ".join(b) for b in blocks))


def cmd_tw_exact(args):
    t1, t2 = _two_trees(args)
    width, td = exact_treewidth(display_graph(t1, t2), cap=args.cap)
    bags = [sorted(map(str, b)) for b in td.bags]
    _emit(args, {"value": width, "certificate": {"bags": bags, "tree": td.tree_edges}}, str(width))


def cmd_decide(args):
    t1, t2 = _two_trees(args)
    answer = decide_dmp(t1, t2, args.k, args.rel, cap=args.cap)
    _emit(args, {"k": args.k, "relation": args.rel, "answer": answer}, "yes" if answer else "no")


def cmd_kernel_witness(args):
    t1, t2 = _two_trees(args)
    params = alpha_constant(args.d1, args.d2)
    chi = kernel_witness(t1, t2, args.k, params)
    p1, p2 = parsimony_score(t1, chi)[0], parsimony_score(t2, chi)[0]
    cert = {"ps_t1": p1, "ps_t2": p2, "distance": abs(p1 - p2), "k": args.k}
    if args.json:
        print(json.dumps({"character": dict(sorted(chi.items())), "certificate": cert}, indent=2))
    else:
        print(chi.to_csv(), end="")
        print(json.dumps(cert), file=sys.stderr)


def cmd_dmp_approx(args):
    t1, t2 = _two_trees(args)
    res = approximate_dmp(t1, t2, r=args.r, exact_cap=args.exact_cap)
    _emit(args, res.to_dict(), f"{res.achieved} ({res.path}, ratio <= {res.guarantee})\n{res.chi.to_csv()}".rstrip())


def cmd_alpha_table(args):
    _emit(args, alpha_tables(2, 9), render_alpha_tables(2, 9).rstrip())


def cmd_gen(args):
    spec = InstanceSpec(args.n, args.generator, args.seed if args.seed is not None else default_seed(), args.k)
    t1, t2 = generate_instance(spec)
    for path, tree in ((args.out1, t1), (args.out2, t2)):
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(write_newick(tree) + "\n")
    _emit(args, {"t1": write_newick(t1), "t2": write_newick(t2), "seed": spec.seed}, f"{write_newick(t1)}\n{write_newick(t2)}")


def _report(args, rep: RunReport) -> None:
    if args.json:
        print(rep.to_json())
    else:
        print(rep.summary())
        for f in rep.failures[:5]:
            print("  " + json.dumps(f, default=str))
    if not rep.passed:
        raise _Failed(rep.command)


def cmd_suite(args):
    seed = args.seed if args.seed is not None else default_seed()
    names = list(SUITES) if args.name == "all" else [args.name]
    failed = []
    for name in names:
        try:
            _report(args, run_suite(name, SuiteConfig(seed=seed, scale=args.scale, exhaustive_n=args.exhaustive_n)))
        except _Failed:
            failed.append(name)
    if failed:
        raise _Failed(", ".join(failed))


def cmd_ratio_sweep(args):
    seed = args.seed if args.seed is not None else default_seed()
    rng = random.Random(seed)
    rep = RunReport(command="ratio-sweep", seed=seed, inputs={"n": args.n, "samples": args.samples})
    start = time.perf_counter()
    ratios = []
    while len(ratios) < args.samples:
        t1, t2 = generate_instance(InstanceSpec(args.n, "random", rng.randrange(2**32)))
        if trees_equal(t1, t2):
            continue
        try:
            dmp, dtbr, ratio = ratio_report(t1, t2, cap=max(args.n, 8))
        except InternalBoundViolation as exc:
            rep.fail(str(exc), t1=write_newick(t1), t2=write_newick(t2))
            continue
        ratios.append(ratio)
        rep.certificates.append({"t1": write_newick(t1), "t2": write_newick(t2), "dmp": dmp, "dtbr": dtbr})
    rep.outputs.update(max_ratio=max(ratios), min_ratio=min(ratios), mean_ratio=round(sum(ratios) / len(ratios), 4))
    rep.timing = time.perf_counter() - start
    _report(args, rep)


def cmd_tw_check(args):
    t1, t2 = _two_trees(args)
    tw, dmp, holds = treewidth_bound_report(t1, t2)
    _emit(args, {"tw": tw, "dmp": dmp, "bound_holds": holds}, f"tw={tw} dmp={dmp} bound {'holds' if holds else 'FAILS'}")
    if not holds:
        raise _Failed("tw-check")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dmpkernel", description="Parsimony distance kernel toolkit.")
    p.add_argument("--json", action="store_true", help="structured output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def pair(name, fn, help_):
        sp = command(name, help=help_)
        sp.add_argument("tree1")
        sp.add_argument("tree2")
        sp.set_defaults(fn=fn)
        return sp

    sp = command("parse", help="parse a Newick file and print it canonically")
    sp.add_argument("tree")
    sp.set_defaults(fn=cmd_parse)
    pair("reduce", cmd_reduce, "apply the cherry and chain rules")
    sp = command("score", help="Fitch parsimony score of a character CSV")
    sp.add_argument("tree")
    sp.add_argument("character")
    sp.set_defaults(fn=cmd_score)
    pair("dmp-exact", cmd_dmp_exact, "exact d_MP").add_argument("--cap", type=int, default=10)
    pair("dtbr-exact", cmd_dtbr_exact, "exact d_TBR").add_argument("--cap", type=int, default=8)
    pair("tw-exact", cmd_tw_exact, "exact treewidth of the display graph").add_argument("--cap", type=int, default=16)
    sp = pair("decide", cmd_decide, "decide d_MP against k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rel", choices=["le", "ge", "eq"], default="le")
    sp.add_argument("--cap", type=int, default=10)
    sp = pair("kernel-witness", cmd_kernel_witness, "character with distance >= k on an irreducible pair")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d1", type=int, default=DEFAULT_PARAMS.d1)
    sp.add_argument("--d2", type=int, default=DEFAULT_PARAMS.d2)
    sp = pair("dmp-approx", cmd_dmp_approx, "kernel-based approximation of d_MP")
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--exact-cap", type=int, default=12)
    command("alpha-table", help="print the c, t' and alpha tables").set_defaults(fn=cmd_alpha_table)
    sp = command("gen", help="generate a tree pair")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--generator", choices=GENERATORS, default="random")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out1")
    sp.add_argument("--out2")
    sp.set_defaults(fn=cmd_gen)
    sp = command("suite", help="run a verification suite")
    sp.add_argument("name", choices=[*SUITES, "all"])
    sp.add_argument("--seed", type=int)
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--exhaustive-n", type=int, default=6)
    sp.set_defaults(fn=cmd_suite)
    sp = command("ratio-sweep", help="d_TBR / d_MP on random pairs")
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(fn=cmd_ratio_sweep)
    pair("tw-check", cmd_tw_check, "check tw(display graph) <= 1120 d_MP + 2")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        args.fn(args)
    except _Failed:
        return 1
    except InternalBoundViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PhyloError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
