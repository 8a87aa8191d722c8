"""Command-line front end.

Exit status is 0 for an affirmative or expected verdict, 1 for a negative
one, and 2 for bad input or an exhausted budget.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path as FilePath

from . import gallery
from .closure import (
    RULE_SETS,
    check_necessary_condition,
    close,
    close_set_rules,
    default_universe,
    format_pairs,
    parse_universe,
)
from .dalograph import (
    DEFAULT_PATH_BUDGET,
    continuations,
    induced_sequence,
    parse_graph,
    parse_strategy,
    random_dalograph,
    strategy_count,
    to_dot,
)
from .equilibrium import DEFAULT_STRATEGY_CAP, Context, brute_force_equilibria, construct_equilibrium, verify_global
from .errors import PathEquilError
from .preference import (
    DEFAULT_PREFIX_BOUND,
    RankedPreference,
    TablePreference,
    check_sufficient_condition,
    parse_preference,
)
from .routing import (
    check_policy_sufficient,
    check_policy_total_order_iff,
    parse_policy,
    parse_routing,
    problem_words,
    solve_routing,
)
from .upword import format_upword


class Output:
    """Collects report rows; prints plain text or tab-separated rows."""

    def __init__(self, tsv: bool):
        self.tsv = tsv

    def text(self, body: str):
        if not self.tsv:
            print(body)

    def row(self, *fields):
        if self.tsv:
            print("\t".join(str(f) for f in fields))


def _read(path: str) -> str:
    return FilePath(path).read_text()


def _graph(path: str):
    g, extra = parse_graph(_read(path))
    return g


def _context(args) -> Context:
    return Context(_graph(args.graph), parse_preference(_read(args.pref)), args.budget)


def cmd_paths(args, out: Output) -> int:
    g = _graph(args.graph)
    if args.node not in g.nodes:
        raise PathEquilError(f"no node {args.node!r}")
    for p in continuations(g, (args.node,), args.budget):
        seq = induced_sequence(g, p)
        out.text(f"{p}   {seq.pretty()}")
        out.row("path", " ".join(map(str, p.walk)), format_upword(seq))
    return 0


def cmd_solve(args, out: Output) -> int:
    report = construct_equilibrium(_context(args))
    out.text(str(report))
    if report.strategy is not None:
        for o in report.strategy.graph.nodes:
            out.row("choose", o, report.strategy[o])
    out.row("verified", "yes" if report.verified else "no")
    return 0 if report.verified else 1


def cmd_verify(args, out: Output) -> int:
    ctx = _context(args)
    s = parse_strategy(_read(args.strategy), ctx.graph)
    report = verify_global(ctx, s)
    out.text(str(report))
    for node, better in report.failures:
        out.row("failure", node, format_upword(better))
    out.row("verified", "yes" if report.verified else "no")
    return 0 if report.verified else 1


def cmd_oracle(args, out: Output) -> int:
    ctx = _context(args)
    found = brute_force_equilibria(ctx, args.cap)
    out.text(f"{len(found)} equilibria among {strategy_count(ctx.graph)} strategies")
    for s in found:
        out.text("  " + ", ".join(f"{o}->{s[o]}" for o in ctx.graph.nodes))
        out.row("equilibrium", " ".join(f"{o}:{s[o]}" for o in ctx.graph.nodes))
    out.row("count", len(found))
    return 0 if found else 1


def cmd_check_sufficient(args, out: Output) -> int:
    g = _graph(args.graph)
    pref = parse_preference(_read(args.pref))
    universe = default_universe(g, args.prefix_bound)
    report = check_sufficient_condition(pref, universe.words, args.prefix_bound)
    out.text(str(report))
    for name, check in report.checks.items():
        out.row(name, "pass" if check else "fail", check.witness if not check else "")
    return 0 if report.ok else 1


def cmd_check_necessary(args, out: Output) -> int:
    g = _graph(args.graph)
    pref = parse_preference(_read(args.pref))
    report = check_necessary_condition(pref, default_universe(g, args.prefix_bound))
    out.text(str(report))
    out.row("verdict", report.verdict)
    return 1 if report.violated else 0


def cmd_closure(args, out: Output) -> int:
    pref = parse_preference(_read(args.pref))
    universe = parse_universe(_read(args.universe), args.prefix_bound)
    words = sorted(universe.words)
    base = {(a, b) for a in words for b in words if pref(a, b)}
    if args.rules == "sets":
        result = close_set_rules(base, universe)
        flagged = result.reflexive()
        out.text(f"light pairs: {len(result.light)}, heavy pairs: {len(result.heavy)}")
        for x, _ in flagged:
            out.text("reflexive: {" + ", ".join(w.pretty() for w in sorted(x)) + "}")
        out.row("reflexive", len(flagged))
        return 1 if flagged else 0
    rules = []
    for name in args.rules.split(","):
        if name not in RULE_SETS:
            raise PathEquilError(f"unknown rule set {name!r}; known: {', '.join(RULE_SETS)}, sets")
        rules += RULE_SETS[name]
    rel = close(base, universe, dict.fromkeys(rules))
    out.text(format_pairs(rel).rstrip())
    for pair in rel.reflexive():
        out.text("derivation:\n" + rel.tree(pair, 1))
    for a, b in sorted(rel.pairs):
        out.row(format_upword(a), format_upword(b), rel.derived[(a, b)].describe())
    return 1 if rel.reflexive() else 0


def cmd_routing(args, out: Output) -> int:
    rp = parse_routing(_read(args.problem))
    policy = parse_policy(_read(args.policy))
    if args.action == "solve":
        report = solve_routing(rp, policy, args.cap)
        out.text(str(report))
        out.text(f"method: {report.method}")
        if report.choice is not None:
            for o in rp.sources:
                out.row("route", o, " ".join(rp.arcs[report.choice[o]][1:]))
        out.row("verified", "yes" if report.verified else "no")
        return 0 if report.verified else 1
    words = problem_words(rp)
    report = check_policy_total_order_iff(policy, words) if args.total else check_policy_sufficient(policy, words)
    out.text(str(report))
    for name, check in report.checks.items():
        out.row(name, "pass" if check else "fail")
    return 0 if report.ok else 1


def cmd_gallery(args, out: Output) -> int:
    if args.action == "list":
        for e in gallery.ENTRIES:
            out.text(f"{e.name:<16} {e.expected:<20} {e.summary}")
            out.row(e.name, e.expected, e.summary)
        return 0
    names = [e.name for e in gallery.ENTRIES] if args.name in (None, "all") else [args.name]
    status = 0
    for name in names:
        entry = gallery.BY_NAME.get(name)
        if entry is None:
            raise PathEquilError(f"no gallery entry {name!r}")
        verdict, text = entry.run()
        same = verdict == entry.expected
        status |= 0 if same else 1
        out.text(f"== {name}: {verdict} (expected {entry.expected}){'' if same else '  MISMATCH'}\n{text}\n")
        out.row(name, verdict, entry.expected, "ok" if same else "mismatch")
    return status


def _labels_of(pref) -> list:
    if isinstance(pref, RankedPreference):
        return sorted(pref.order.rank)
    if isinstance(pref, TablePreference):
        return sorted({a for pair in pref.pairs for w in pair for a in w.prefix + w.period})
    raise PathEquilError("cannot tell which labels this preference uses")


def cmd_search(args, out: Output) -> int:
    """Random dalographs searched for ones without any equilibrium."""
    pref = parse_preference(_read(args.pref))
    labels = _labels_of(pref)
    rng = random.Random(args.seed)
    hits = 0
    for k in range(args.seeds):
        g = random_dalograph(rng, args.nodes, args.arcs or 2 * args.nodes, labels)
        try:
            found = brute_force_equilibria(Context(g, pref, args.budget), args.cap)
        except PathEquilError as err:
            out.text(f"graph {k}: skipped ({err})")
            continue
        if not found:
            hits += 1
            out.text(f"graph {k}: no equilibrium\n" + "".join(f"  arc {s} {t} {a}\n" for s, t, a in g.arc_list()))
        out.row(k, len(found))
    out.text(f"{hits} of {args.seeds} random graphs have no equilibrium")
    return 1 if hits else 0


def cmd_dot(args, out: Output) -> int:
    g = _graph(args.graph)
    s = parse_strategy(_read(args.strategy), g) if args.strategy else None
    sys.stdout.write(to_dot(g, s, FilePath(args.graph).stem))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_PATH_BUDGET, help="path enumeration cap per walk")
    common.add_argument("--prefix-bound", type=int, default=DEFAULT_PREFIX_BOUND, help="longest prefix tried")
    common.add_argument("--cap", type=int, default=DEFAULT_STRATEGY_CAP, help="largest strategy space enumerated")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "tsv"), default="text")

    parser = argparse.ArgumentParser(prog="pathequil", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(fn=fn)
        return p

    add("paths", cmd_paths, "graph", "node", help="list the paths from a node")
    add("solve", cmd_solve, "graph", "pref", help="construct an equilibrium")
    add("verify", cmd_verify, "graph", "pref", "strategy", help="check a strategy")
    add("oracle", cmd_oracle, "graph", "pref", help="enumerate every equilibrium")
    add("check-sufficient", cmd_check_sufficient, "graph", "pref", help="test the sufficient condition")
    add("check-necessary", cmd_check_necessary, "graph", "pref", help="look for a closure refutation")
    p = add("closure", cmd_closure, "pref", "universe", help="close a preference over a universe")
    p.add_argument("--rules", default="combination", help="comma list of ep,trans,atrans,gep,combination or 'sets'")
    p = add("routing", cmd_routing, help="routing problems")
    p.add_argument("action", choices=("solve", "check"))
    p.add_argument("problem")
    p.add_argument("policy")
    p.add_argument("--total", action="store_true", help="check the total-order characterization")
    p = add("gallery", cmd_gallery, help="built-in examples")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?")
    p = add("search", cmd_search, "pref", help="hunt for graphs without equilibria")
    p.add_argument("--nodes", type=int, default=4)
    p.add_argument("--arcs", type=int, default=0)
    p.add_argument("--seeds", type=int, default=100)
    p = add("dot", cmd_dot, "graph", help="graphviz export")
    p.add_argument("--strategy")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format == "tsv")
    try:
        return args.fn(args, out)
    except (PathEquilError, OSError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
