"""Routing problems, routing policies, and their reduction to dalographs.

A routing problem is a labelled multigraph with a target node of outdegree
zero reachable from everywhere. Arcs are identified by their index in the
arc list, so parallel arcs with different labels are allowed natively. The
dalograph embedding needs at most one arc per ordered node pair.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from math import inf
from typing import Callable, Iterable, Iterator

from .dalograph import Dalograph, Strategy, parse_graph_lines
from .equilibrium import Context, construct_equilibrium
from .errors import DummyLabelClash, InvalidTarget, NotTotalOnSample, ParseError, StrategySpaceTooLarge
from .order import PASS, Check, FiniteRelation, LabelOrder, check_strict_weak_order, parse_label_order
from .preference import Preference
from .upword import UPWord, format_word, tokenize

Word = tuple
DEFAULT_ROUTING_CAP = 1 << 16


# policies ---------------------------------------------------------------------


class RoutingPolicy:
    name = "policy"

    def less(self, u: Word, v: Word) -> bool:
        raise NotImplementedError

    def __call__(self, u, v) -> bool:
        return self.less(tuple(u), tuple(v))


class MinHop(RoutingPolicy):
    """Longer routes are less preferred."""

    name = "minhop"

    def less(self, u, v):
        return len(u) > len(v)

    def __repr__(self):
        return "MinHop()"


class MinHopLex(RoutingPolicy):
    """Min-hop made total: among equally long words the larger one is less preferred."""

    name = "minhop-lex"

    def less(self, u, v):
        if len(u) != len(v):
            return len(u) > len(v)
        return u > v

    def __repr__(self):
        return "MinHopLex()"


class Widest(RoutingPolicy):
    """Compare bottlenecks, the least label rank along a route (empty route: infinite)."""

    name = "widest"

    def __init__(self, order: LabelOrder):
        self.order = order

    def bottleneck(self, u: Word) -> float:
        return min((self.order.level(a) for a in u), default=inf)

    def less(self, u, v):
        return self.bottleneck(u) < self.bottleneck(v)

    def __repr__(self):
        return f"Widest({dict(sorted(self.order.rank.items()))})"


class TablePolicy(RoutingPolicy):
    name = "table"

    def __init__(self, pairs: Iterable[tuple[Word, Word]]):
        self.pairs = frozenset((tuple(u), tuple(v)) for u, v in pairs)

    def less(self, u, v):
        return (u, v) in self.pairs

    @classmethod
    def from_ranking(cls, words: Iterable[Word]) -> TablePolicy:
        """Strict total order on the given words, least preferred first."""
        words = [tuple(w) for w in words]
        return cls((words[i], words[j]) for i in range(len(words)) for j in range(i + 1, len(words)))

    def __repr__(self):
        return f"TablePolicy({len(self.pairs)} pairs)"


class FunctionPolicy(RoutingPolicy):
    def __init__(self, fn: Callable[[Word, Word], bool], name="function"):
        self.fn = fn
        self.name = name

    def less(self, u, v):
        return bool(self.fn(u, v))


def parse_policy(text: str) -> RoutingPolicy:
    kind = None
    ranks = []
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head in ("minhop", "minhop-lex", "widest") and line == head:
            if kind is not None:
                raise ParseError(f"second policy kind {head!r}", lineno)
            kind = head
        elif head == "rank":
            ranks.append(line)
            try:
                parse_label_order(line)
            except ParseError as err:
                raise ParseError(str(err).split(": ", 1)[-1], lineno) from None
        elif head == "pair":
            body = line[len("pair"):]
            if body.count("<") != 1:
                raise ParseError("expected 'pair <word> < <word>'", lineno)
            left, right = body.split("<")
            pairs.append((tokenize(left), tokenize(right)))
        else:
            raise ParseError(f"cannot read {line!r}", lineno)
    if kind == "widest":
        return Widest(parse_label_order("\n".join(ranks)))
    if ranks:
        raise ParseError("rank lines only go with 'widest'")
    if kind is not None and pairs:
        raise ParseError("a policy file holds either a builtin or pairs, not both")
    if kind == "minhop":
        return MinHop()
    if kind == "minhop-lex":
        return MinHopLex()
    return TablePolicy(pairs)


def format_policy(policy: RoutingPolicy) -> str:
    if isinstance(policy, TablePolicy):
        return "".join(f"pair {format_word(u)} < {format_word(v)}\n" for u, v in sorted(policy.pairs))
    if isinstance(policy, Widest):
        items = sorted(policy.order.rank.items(), key=lambda kv: (kv[1], kv[0]))
        return "widest\n" + "".join(f"rank {a} {r}\n" for a, r in items)
    return f"{policy.name}\n"


# problems -----------------------------------------------------------------------


@dataclass(frozen=True)
class RoutingProblem:
    arcs: tuple
    target: object
    nodes: tuple = ()

    def __post_init__(self):
        arcs = tuple((s, t, label) for s, t, label in self.arcs)
        nodes = set(self.nodes) | {s for s, _, _ in arcs} | {t for _, t, _ in arcs} | {self.target}
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "nodes", tuple(_sorted(nodes)))
        if any(s == self.target for s, _, _ in arcs):
            raise InvalidTarget(f"target {self.target!r} has an outgoing arc")
        stuck = sorted(map(repr, set(nodes) - self.reaching_target()))
        if stuck:
            raise InvalidTarget(f"target unreachable from {', '.join(stuck)}")

    def reaching_target(self) -> set:
        back: dict = {}
        for s, t, _ in self.arcs:
            back.setdefault(t, []).append(s)
        seen = {self.target}
        todo = [self.target]
        while todo:
            for s in back.get(todo.pop(), ()):
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen

    def out_arcs(self, node) -> list[int]:
        return [i for i, (s, _, _) in enumerate(self.arcs) if s == node]

    @property
    def sources(self) -> list:
        return [o for o in self.nodes if o != self.target]

    def has_parallel_arcs(self) -> bool:
        pairs = [(s, t) for s, t, _ in self.arcs]
        return len(pairs) != len(set(pairs))

    def bfs_distances(self) -> dict:
        back: dict = {}
        for s, t, _ in self.arcs:
            back.setdefault(t, []).append(s)
        dist = {self.target: 0}
        queue = deque([self.target])
        while queue:
            t = queue.popleft()
            for s in back.get(t, ()):
                if s not in dist:
                    dist[s] = dist[t] + 1
                    queue.append(s)
        return dist

    def simple_route_words(self, node) -> list[Word]:
        """Words of every node-simple route from ``node`` to the target."""
        out = []

        def walk(o, seen, word):
            if o == self.target:
                out.append(word)
                return
            for i in self.out_arcs(o):
                _, t, label = self.arcs[i]
                if t not in seen:
                    walk(t, seen | {t}, word + (label,))

        walk(node, {node}, ())
        return out


def _sorted(items):
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


def route(rp: RoutingProblem, choice: dict, node) -> Word | None:
    """Word of the route the strategy induces from ``node``, or None if it cycles."""
    word = []
    seen = {node}
    while node != rp.target:
        _, node, label = rp.arcs[choice[node]]
        word.append(label)
        if node in seen:
            return None
        seen.add(node)
    return tuple(word)


@dataclass
class RoutingReport:
    problem: RoutingProblem
    choice: dict | None
    verified: bool
    routes: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    method: str = ""

    def __bool__(self):
        return self.verified

    def __str__(self):
        if self.choice is None:
            return f"no routing equilibrium ({self.method})"
        lines = []
        for o in self.problem.sources:
            s, t, label = self.problem.arcs[self.choice[o]]
            w = self.routes.get(o)
            shown = "cycles" if w is None else format_word(w)
            lines.append(f"{o} -> {t} via {label}   route {shown}")
        lines.append(f"verified: {'yes' if self.verified else 'no'}")
        lines += [f"  {o}: {why}" for o, why in self.failures]
        return "\n".join(lines)


def verify_routing(rp: RoutingProblem, policy: RoutingPolicy, choice: dict) -> RoutingReport:
    routes = {}
    failures = []
    for o in rp.sources:
        w = route(rp, choice, o)
        routes[o] = w
        if w is None:
            failures.append((o, "route does not reach the target"))
            continue
        for other in rp.simple_route_words(o):
            if policy(w, other):
                failures.append((o, f"{format_word(w)} < {format_word(other)}"))
                break
    return RoutingReport(rp, dict(choice), not failures, routes, failures, "verified directly")


def routing_strategies(rp: RoutingProblem) -> Iterator[dict]:
    sources = rp.sources
    for combo in product(*(rp.out_arcs(o) for o in sources)):
        yield dict(zip(sources, combo))


def brute_force_routing(rp: RoutingProblem, policy: RoutingPolicy, cap: int = DEFAULT_ROUTING_CAP) -> list[dict]:
    size = 1
    for o in rp.sources:
        size *= len(rp.out_arcs(o))
    if size > cap:
        raise StrategySpaceTooLarge(size, cap)
    return [c for c in routing_strategies(rp) if verify_routing(rp, policy, c).verified]


# embedding ----------------------------------------------------------------------


class EmbeddedPreference(Preference):
    """Preference induced on the embedded dalograph.

    Two words ending in the dummy label compare as their finite parts do
    under the policy, and a word never reaching the dummy label is below
    every word that does. Nothing else is comparable.
    """

    name = "embedded"

    def __init__(self, policy: RoutingPolicy, dummy_label="dl"):
        self.policy = policy
        self.dummy_label = dummy_label

    def finite_part(self, w: UPWord) -> Word | None:
        if w.period == (self.dummy_label,) and self.dummy_label not in w.prefix:
            return w.prefix
        return None

    def less(self, a, b):
        fb = self.finite_part(b)
        if fb is None:
            return False
        fa = self.finite_part(a)
        if fa is None:
            return self.dummy_label not in a.prefix + a.period
        return self.policy(fa, fb)


def embed(
    rp: RoutingProblem, policy: RoutingPolicy, dummy_label="dl", dummy_node="_dummy"
) -> tuple[Dalograph, EmbeddedPreference]:
    if any(label == dummy_label for _, _, label in rp.arcs):
        raise DummyLabelClash(dummy_label)
    if dummy_node in rp.nodes:
        raise ValueError(f"dummy node {dummy_node!r} already exists")
    if rp.has_parallel_arcs():
        raise ValueError("the dalograph embedding needs at most one arc per ordered node pair")
    arcs = list(rp.arcs) + [(rp.target, dummy_node, dummy_label), (dummy_node, dummy_node, dummy_label)]
    return Dalograph(arcs, rp.nodes), EmbeddedPreference(policy, dummy_label)


def strategy_to_routing(rp: RoutingProblem, s: Strategy) -> dict:
    index = {(src, dst): i for i, (src, dst, _) in enumerate(rp.arcs)}
    return {o: index[(o, s[o])] for o in rp.sources}


def solve_routing(rp: RoutingProblem, policy: RoutingPolicy, cap: int = DEFAULT_ROUTING_CAP) -> RoutingReport:
    """Build a routing equilibrium through the dalograph embedding and check it directly.

    Problems with parallel arcs cannot be embedded and are searched
    exhaustively instead; so are problems where the embedded construction
    does not yield a verified routing equilibrium.
    """
    if not rp.has_parallel_arcs():
        g, pref = embed(rp, policy)
        built = construct_equilibrium(Context(g, pref))
        report = verify_routing(rp, policy, strategy_to_routing(rp, built.strategy))
        report.method = "constructed through the dalograph embedding"
        if report.verified:
            return report
    found = brute_force_routing(rp, policy, cap)
    if not found:
        return RoutingReport(rp, None, False, method="exhaustive search found none")
    report = verify_routing(rp, policy, found[0])
    report.method = "exhaustive search"
    return report


# policy conditions --------------------------------------------------------------


@dataclass
class PolicyReport:
    checks: dict
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def __bool__(self):
        return self.ok

    def __str__(self):
        lines = [f"{name}: {check}" for name, check in self.checks.items()]
        for name, rp, count in self.counterexamples:
            lines.append(f"counterexample ({name}): {len(rp.nodes)} nodes, {len(rp.arcs)} arcs, "
                         f"{count} routing equilibria")
            lines += [f"  arc {s} {t} {label}" for s, t, label in rp.arcs]
            lines.append(f"  target {rp.target}")
        lines.append(f"verdict: {'PASS on sample' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def _sample(words: Iterable[Word]) -> list[Word]:
    return sorted({tuple(w) for w in words}, key=lambda w: (len(w), w))


def check_policy_E_prefix(policy: RoutingPolicy, words: Iterable[Word]) -> Check:
    sample = _sample(words)
    pool = set(sample)
    for x, y in product(sample, repeat=2):
        if not policy(x, y):
            continue
        for k in range(1, min(len(x), len(y)) + 1):
            if x[:k] != y[:k]:
                break
            a, b = x[k:], y[k:]
            if a in pool and b in pool and not policy(a, b):
                return Check(False, (x[:k], a, b), "u.v < u.w but not v < w")
    return PASS


def check_suffix_not_worse(policy: RoutingPolicy, words: Iterable[Word]) -> Check:
    """No ``v`` is below ``u.v`` with ``u`` nonempty."""
    sample = _sample(words)
    for v in sample:
        for uv in sample:
            if len(uv) > len(v) and uv[len(uv) - len(v):] == v and policy(v, uv):
                return Check(False, (uv[: len(uv) - len(v)], v), "v < u.v")
    return PASS


def check_suffix_better(policy: RoutingPolicy, words: Iterable[Word]) -> Check:
    """Every ``u.v`` is below ``v`` with ``u`` nonempty."""
    sample = _sample(words)
    for v in sample:
        for uv in sample:
            if len(uv) > len(v) and uv[len(uv) - len(v):] == v and not policy(uv, v):
                return Check(False, (uv[: len(uv) - len(v)], v), "u.v is not below v")
    return PASS


def check_policy_sufficient(policy: RoutingPolicy, words: Iterable[Word]) -> PolicyReport:
    sample = _sample(words)
    return PolicyReport(
        {
            "strict weak order": check_strict_weak_order(FiniteRelation.restrict(policy, sample)),
            "E-prefix": check_policy_E_prefix(policy, sample),
            "v not below u.v": check_suffix_not_worse(policy, sample),
        }
    )


def _chain(arcs: list, start, end, word: Word, fresh: Iterator):
    """Arcs spelling ``word`` from ``start`` to ``end`` through fresh nodes."""
    here = start
    for i, label in enumerate(word):
        there = end if i == len(word) - 1 else next(fresh)
        arcs.append((here, there, label))
        here = there


def _fresh(prefix: str) -> Iterator[str]:
    n = 0
    while True:
        n += 1
        yield f"{prefix}{n}"


def prefix_counterexample(u: Word, v: Word, w: Word) -> RoutingProblem:
    """Source ``s`` reaches ``m`` by ``u``; ``m`` reaches the target by ``v`` or by ``w``."""
    arcs: list = []
    fresh = _fresh("x")
    _chain(arcs, "s", "m", u, fresh)
    _chain(arcs, "m", "T", v, fresh)
    _chain(arcs, "m", "T", w, fresh)
    return RoutingProblem(tuple(arcs), "T")


def cycle_counterexample(u: Word, v: Word) -> RoutingProblem:
    """Nodes ``n`` and ``n1`` reach each other by ``u`` and the target by ``v``."""
    arcs: list = []
    fresh = _fresh("x")
    _chain(arcs, "n", "n1", u, fresh)
    _chain(arcs, "n1", "n", u, fresh)
    _chain(arcs, "n", "T", v, fresh)
    _chain(arcs, "n1", "T", v, fresh)
    return RoutingProblem(tuple(arcs), "T")


def check_total_on(policy: RoutingPolicy, words: Iterable[Word]) -> None:
    sample = _sample(words)
    for i, x in enumerate(sample):
        for y in sample[i + 1:]:
            if not policy(x, y) and not policy(y, x):
                raise NotTotalOnSample((x, y))


def check_policy_total_order_iff(policy: RoutingPolicy, words: Iterable[Word]) -> PolicyReport:
    """Both conditions of the total-order characterization, with counterexamples.

    A failing condition yields the matching counterexample routing problem,
    which is then searched exhaustively for routing equilibria.
    """
    sample = _sample(words)
    check_total_on(policy, sample)
    ep = check_policy_E_prefix(policy, sample)
    sb = check_suffix_better(policy, sample)
    report = PolicyReport({"E-prefix": ep, "u.v below v": sb})
    if not ep:
        u, v, w = ep.witness
        if v and w:
            rp = prefix_counterexample(u, v, w)
            report.counterexamples.append(("prefix", rp, len(brute_force_routing(rp, policy))))
    if not sb:
        u, v = sb.witness
        if v:
            rp = cycle_counterexample(u, v)
            report.counterexamples.append(("cycle", rp, len(brute_force_routing(rp, policy))))
    return report


def problem_words(rp: RoutingProblem) -> list[Word]:
    """Every simple route word of the problem, from every node but the target."""
    return _sample(w for o in rp.sources for w in rp.simple_route_words(o))


# routing files ----------------------------------------------------------------


def parse_routing(text: str) -> RoutingProblem:
    nodes, arcs, extra = parse_graph_lines(text, allow_parallel=True)
    unknown = set(extra) - {"target"}
    if unknown:
        raise ParseError(f"unexpected directive(s) {sorted(unknown)} in routing problem")
    targets = extra.get("target", [])
    if len(targets) != 1 or len(targets[0]) != 1:
        raise ParseError("a routing problem needs exactly one 'target <node>' line")
    return RoutingProblem(tuple(arcs), targets[0][0], tuple(nodes))


def format_routing(rp: RoutingProblem) -> str:
    lines = [f"node {o}" for o in rp.nodes]
    lines += [f"arc {s} {t} {label}" for s, t, label in rp.arcs]
    lines.append(f"target {rp.target}")
    return "\n".join(lines) + "\n"
