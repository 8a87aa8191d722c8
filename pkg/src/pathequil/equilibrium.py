"""Maximal paths, the seeking-forward function, and equilibrium construction.

Paths passed around here are always whole paths: a continuation of a walk
``x`` is the :class:`Path` ``x . Gamma``. The part of a path seen from the
last node of ``x`` is ``path.drop(len(x) - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .dalograph import (
    DEFAULT_PATH_BUDGET,
    Dalograph,
    Path,
    Strategy,
    check_walk,
    continuations,
    induced_path,
    induced_sequence,
    is_looping,
    strategies,
    strategy_count,
)
from .errors import CyclicPreference, InvalidWalk, StrategySpaceTooLarge
from .order import PASS, Check
from .preference import Preference
from .upword import UPWord

DEFAULT_STRATEGY_CAP = 1 << 16


class Context:
    """A dalograph paired with a preference, with memoized path enumeration."""

    def __init__(self, graph: Dalograph, preference: Preference, budget: int = DEFAULT_PATH_BUDGET):
        if budget <= 0:
            raise ValueError("budget must be positive")
        self.graph = graph
        self.preference = preference
        self.budget = budget
        self._conts: dict = {}
        self._seqs: dict = {}
        self._eligible: dict = {}

    def less(self, a: UPWord, b: UPWord) -> bool:
        return self.preference(a, b)

    def continuations(self, walk: Iterable) -> list[Path]:
        walk = tuple(walk)
        if walk not in self._conts:
            self._conts[walk] = continuations(self.graph, walk, self.budget)
        return self._conts[walk]

    def seq(self, path: Path) -> UPWord:
        if path not in self._seqs:
            self._seqs[path] = induced_sequence(self.graph, path)
        return self._seqs[path]

    def eligible(self, node) -> list[UPWord]:
        if node not in self._eligible:
            self._eligible[node] = sorted({self.seq(p) for p in self.continuations((node,))})
        return self._eligible[node]

    def with_graph(self, graph: Dalograph) -> Context:
        return Context(graph, self.preference, self.budget)


def _extends(x: tuple, path: Path) -> bool:
    return all(path.node_at(i) == o for i, o in enumerate(x))


def is_maximal_continuation(ctx: Context, x: Iterable, path: Path) -> Check:
    """``m(x, path)``: no continuation of ``x`` is preferred from the last node of ``x``."""
    x = check_walk(ctx.graph, x)
    if not _extends(x, path):
        raise InvalidWalk(f"{path} does not extend the walk {x!r}")
    k = len(x) - 1
    mine = ctx.seq(path.drop(k))
    for other in ctx.continuations(x):
        theirs = ctx.seq(other.drop(k))
        if ctx.less(mine, theirs):
            return Check(False, other, f"{mine.pretty()} < {theirs.pretty()} from {x[-1]!r}")
    return PASS


def is_semi_hereditary_maximal(ctx: Context, x: Iterable, path: Path) -> Check:
    x = check_walk(ctx.graph, x)
    walk = path.walk
    for j in range(len(x), len(walk) + 1):
        check = is_maximal_continuation(ctx, walk[:j], path)
        if not check:
            return Check(False, (walk[:j], check.witness), f"after walk {walk[:j]!r}: {check.detail}")
    return PASS


def is_hereditary_maximal(ctx: Context, path: Path) -> Check:
    walk = path.walk
    for i in range(len(walk) - 1):
        check = is_maximal_continuation(ctx, (walk[i],), path.drop(i))
        if not check:
            return Check(False, (walk[i], check.witness), f"at node {walk[i]!r}: {check.detail}")
    return PASS


def seek_forward(ctx: Context, x: Iterable, path: Path) -> Path:
    """The seeking-forward function ``F(x, path)``.

    While the walk is not looping, keep following the current path if it is
    maximal; otherwise switch to a maximal continuation strictly better from
    the last node, taking the one whose looping walk is least.
    """
    x = check_walk(ctx.graph, x)
    if not _extends(x, path):
        raise InvalidWalk(f"{path} does not extend the walk {x!r}")
    while not is_looping(x):
        k = len(x) - 1
        conts = ctx.continuations(x)
        seqs = [ctx.seq(p.drop(k)) for p in conts]
        mine = ctx.seq(path.drop(k))
        better = [i for i, s in enumerate(seqs) if ctx.less(mine, s)]
        if better:
            maximal = [i for i in better if not any(ctx.less(seqs[i], t) for t in seqs)]
            if not maximal:
                raise CyclicPreference(x, [conts[i] for i in better])
            path = min((conts[i] for i in maximal), key=lambda p: p.walk)
        x = x + (path.node_at(len(x)),)
    return path


def least_path(g: Dalograph, node) -> Path:
    """The path that always follows the least successor."""
    walk = [node]
    while not is_looping(tuple(walk)):
        walk.append(g.successors(walk[-1])[0])
    return Path.from_looping_walk(walk)


@dataclass(frozen=True)
class MaximalPathResult:
    path: Path
    hereditary: Check

    def __bool__(self):
        return self.hereditary.ok


def find_hereditary_maximal_path(ctx: Context, node) -> MaximalPathResult:
    path = seek_forward(ctx, (node,), least_path(ctx.graph, node))
    return MaximalPathResult(path, is_hereditary_maximal(ctx, path))


@dataclass
class EquilibriumReport:
    strategy: Strategy | None
    verified: bool
    failures: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return self.verified

    def __str__(self):
        lines = []
        if self.strategy is None:
            lines.append("strategy: none")
        else:
            lines.append("strategy:")
            lines += [f"  {o} -> {self.strategy[o]}" for o in self.strategy.graph.nodes]
        lines.append(f"verified: {'yes' if self.verified else 'no'}")
        for node, better in self.failures:
            lines.append(f"  node {node}: improved by {better.pretty()}")
        lines += [f"note: {d}" for d in self.diagnostics]
        return "\n".join(lines)


def verify_local(ctx: Context, s: Strategy, node) -> Check:
    mine = ctx.seq(induced_path(s, node))
    for other in ctx.eligible(node):
        if ctx.less(mine, other):
            return Check(False, other, f"{mine.pretty()} < {other.pretty()} at {node!r}")
    return PASS


def verify_global(ctx: Context, s: Strategy) -> EquilibriumReport:
    failures = []
    for o in ctx.graph.nodes:
        check = verify_local(ctx, s, o)
        if not check:
            failures.append((o, check.witness))
    return EquilibriumReport(s, not failures, failures)


def is_equilibrium(ctx: Context, s: Strategy) -> bool:
    return all(verify_local(ctx, s, o) for o in ctx.graph.nodes)


def dismissed_arcs(g: Dalograph, path: Path) -> list[tuple]:
    """Arcs leaving a node of ``path`` other than the one the path takes."""
    out = []
    for p in path.nodes():
        keep = path.successor(p)
        out += [(p, q) for q in g.successors(p) if q != keep]
    return out


def construct_equilibrium(ctx: Context) -> EquilibriumReport:
    """Remove dismissed arcs along hereditary maximal paths until no choice is left."""
    g = ctx.graph
    diagnostics = []
    while True:
        branching = [o for o in g.nodes if g.outdegree(o) >= 2]
        if not branching:
            break
        sub = ctx if g is ctx.graph else ctx.with_graph(g)
        result = find_hereditary_maximal_path(sub, branching[0])
        if not result:
            diagnostics.append(f"path {result.path} from {branching[0]!r} is not hereditary maximal: "
                               f"{result.hereditary.detail}")
        g = g.without_arcs(dismissed_arcs(g, result.path))
    s = Strategy(ctx.graph, {o: g.successors(o)[0] for o in g.nodes})
    report = verify_global(ctx, s)
    report.diagnostics = diagnostics
    return report


def iter_equilibria(ctx: Context, cap: int = DEFAULT_STRATEGY_CAP) -> Iterator[Strategy]:
    size = strategy_count(ctx.graph)
    if size > cap:
        raise StrategySpaceTooLarge(size, cap)
    for s in strategies(ctx.graph):
        if is_equilibrium(ctx, s):
            yield s


def brute_force_equilibria(ctx: Context, cap: int = DEFAULT_STRATEGY_CAP) -> list[Strategy]:
    """Every global equilibrium, by exhaustive enumeration of strategies."""
    return list(iter_equilibria(ctx, cap))
