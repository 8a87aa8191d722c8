"""Dalographs: finite arc-labelled digraphs in which every node has an outgoing arc.

Walks are node tuples that stop at their first repeated node; a path is the
infinite node sequence ``u (o v)^omega`` determined by a looping walk
``u o v o``. Iteration over nodes and successors is always in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import (
    DuplicateArc,
    DummyLabelClash,
    InvalidStrategy,
    InvalidWalk,
    MissingLabel,
    ParseError,
    PathBudgetExceeded,
    ZeroOutdegree,
)
from .upword import UPWord

DEFAULT_PATH_BUDGET = 100_000

Node = Hashable


def _sorted(items: Iterable) -> list:
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


class Dalograph:
    """Immutable validated dalograph.

    ``arcs`` maps ``(source, target)`` to the arc label. Raises
    :class:`ZeroOutdegree` when some node has no outgoing arc and
    :class:`DuplicateArc` when an arc list repeats an ordered pair.
    """

    __slots__ = ("_arcs", "_nodes", "_succ")

    def __init__(self, arcs: Mapping | Iterable[tuple], nodes: Iterable[Node] = ()):
        table: dict = {}
        if isinstance(arcs, Mapping):
            table = dict(arcs)
        else:
            for source, target, label in arcs:
                if (source, target) in table:
                    raise DuplicateArc(source, target)
                table[(source, target)] = label
        all_nodes = set(nodes) | {s for s, _ in table} | {t for _, t in table}
        succ: dict = {o: [] for o in all_nodes}
        for source, target in table:
            succ[source].append(target)
        for o in _sorted(all_nodes):
            if not succ[o]:
                raise ZeroOutdegree(o)
        self._arcs = table
        self._nodes = tuple(_sorted(all_nodes))
        self._succ = {o: tuple(_sorted(ts)) for o, ts in succ.items()}

    @property
    def nodes(self) -> tuple:
        return self._nodes

    @property
    def arcs(self) -> dict:
        return dict(self._arcs)

    def arc_list(self) -> list[tuple]:
        return [(s, t, self._arcs[(s, t)]) for s in self._nodes for t in self._succ[s]]

    def successors(self, node) -> tuple:
        return self._succ[node]

    def label(self, source, target):
        return self._arcs[(source, target)]

    def has_arc(self, source, target) -> bool:
        return (source, target) in self._arcs

    def outdegree(self, node) -> int:
        return len(self._succ[node])

    @property
    def labels(self) -> frozenset:
        return frozenset(self._arcs.values())

    def __len__(self) -> int:
        return len(self._arcs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Dalograph) and (self._nodes, self._arcs) == (other._nodes, other._arcs)

    def __hash__(self) -> int:
        return hash((self._nodes, frozenset(self._arcs.items())))

    def __repr__(self) -> str:
        return f"Dalograph({self.arc_list()!r})"

    def without_arcs(self, dropped: Iterable[tuple]) -> Dalograph:
        dropped = set(dropped)
        return Dalograph({k: v for k, v in self._arcs.items() if k not in dropped}, self._nodes)


def validate(arcs, nodes=()) -> Dalograph:
    return Dalograph(arcs, nodes)


def embed_node_labelled(node_labels: Mapping, arcs: Iterable[tuple]) -> Dalograph:
    """Move every node label onto the node's outgoing arcs."""
    table = {}
    for source, target in arcs:
        label = node_labels.get(source)
        if label is None or label == "":
            raise MissingLabel(source)
        if (source, target) in table:
            raise DuplicateArc(source, target)
        table[(source, target)] = label
    for node, label in node_labels.items():
        if label is None or label == "":
            raise MissingLabel(node)
    return Dalograph(table, node_labels)


def embed_with_sink(
    arcs: Iterable[tuple],
    nodes: Iterable[Node] = (),
    dummy_label="dl",
    dummy_node="_sink",
    all_nodes: bool = False,
) -> Dalograph:
    """Repair dead ends with a dummy node carrying a ``dummy_label`` self-loop.

    Every zero-outdegree node gets a ``dummy_label`` arc to the dummy node.
    With ``all_nodes`` every node gets one, which models finite paths as
    infinite ones. A graph without dead ends is returned unchanged unless
    ``all_nodes`` is set.
    """
    table: dict = {}
    for source, target, label in arcs:
        if (source, target) in table:
            raise DuplicateArc(source, target)
        table[(source, target)] = label
    if dummy_label in table.values():
        raise DummyLabelClash(dummy_label)
    everything = set(nodes) | {s for s, _ in table} | {t for _, t in table}
    if dummy_node in everything:
        raise ValueError(f"dummy node {dummy_node!r} already exists")
    has_out = {s for s, _ in table}
    repaired = _sorted(everything) if all_nodes else _sorted(everything - has_out)
    if not repaired:
        return Dalograph(table, everything)
    for o in repaired:
        table[(o, dummy_node)] = dummy_label
    table[(dummy_node, dummy_node)] = dummy_label
    return Dalograph(table, everything | {dummy_node})


# walks ----------------------------------------------------------------------


def is_looping(walk: tuple) -> bool:
    return len(walk) > 1 and walk[-1] in walk[:-1]


def check_walk(g: Dalograph, walk: Iterable[Node]) -> tuple:
    walk = tuple(walk)
    if not walk:
        raise InvalidWalk("walks used here must be nonempty")
    for i, (a, b) in enumerate(zip(walk, walk[1:])):
        if not g.has_arc(a, b):
            raise InvalidWalk(f"{a!r} -> {b!r} is not an arc")
        if b in walk[: i + 1] and i + 2 != len(walk):
            raise InvalidWalk(f"node {b!r} repeats before the end of the walk")
    return walk


@dataclass(frozen=True, order=True)
class Path:
    """The infinite node sequence ``entry + loop + loop + ...``."""

    entry: tuple
    loop: tuple

    @classmethod
    def from_looping_walk(cls, walk: Iterable[Node]) -> Path:
        walk = tuple(walk)
        if not is_looping(walk):
            raise InvalidWalk(f"{walk!r} is not a looping walk")
        i = walk.index(walk[-1])
        return cls(walk[:i], walk[i:-1])

    @property
    def walk(self) -> tuple:
        """The looping walk ``u o v o`` this path comes from."""
        return self.entry + self.loop + self.loop[:1]

    @property
    def start(self):
        return self.entry[0] if self.entry else self.loop[0]

    def node_at(self, k: int):
        if k < len(self.entry):
            return self.entry[k]
        return self.loop[(k - len(self.entry)) % len(self.loop)]

    def drop(self, k: int) -> Path:
        """The suffix path starting at position ``k``."""
        if k <= len(self.entry):
            return Path(self.entry[k:], self.loop)
        shift = (k - len(self.entry)) % len(self.loop)
        return Path((), self.loop[shift:] + self.loop[:shift])

    def nodes(self) -> tuple:
        return self.entry + self.loop

    def successor(self, node):
        """Next node after ``node``; well defined because paths have memory."""
        w = self.walk
        return w[w.index(node) + 1]

    def arcs(self) -> list[tuple]:
        w = self.walk
        return list(zip(w, w[1:]))

    def __str__(self) -> str:
        head = " ".join(map(str, self.entry))
        body = " ".join(map(str, self.loop))
        return f"{head + ' ' if head else ''}({body})^ω"


def continuations(
    g: Dalograph, walk: Iterable[Node], budget: int = DEFAULT_PATH_BUDGET
) -> list[Path]:
    """Every path extending ``walk``, in lexicographic order of looping walks.

    A continuation is returned as the whole path ``walk . Gamma``. A looping
    walk has exactly one continuation.
    """
    walk = check_walk(g, walk)
    if is_looping(walk):
        return [Path.from_looping_walk(walk)]
    out: list[Path] = []
    seen = set(walk)
    stack: list = [walk]

    # explicit DFS, successors pushed in reverse to emit sorted order
    def extend(w: tuple):
        for q in g.successors(w[-1]):
            if q in seen:
                out.append(Path.from_looping_walk(w + (q,)))
                if len(out) > budget:
                    raise PathBudgetExceeded(budget)
            else:
                seen.add(q)
                extend(w + (q,))
                seen.discard(q)

    extend(stack.pop())
    return out


def word_of(g: Dalograph, walk: Iterable[Node]) -> tuple:
    walk = tuple(walk)
    return tuple(g.label(a, b) for a, b in zip(walk, walk[1:]))


def induced_sequence(g: Dalograph, p: Path) -> UPWord:
    o = p.loop[0]
    return UPWord(word_of(g, p.entry + (o,)), word_of(g, p.loop + (o,)))


def eligible_sequences(g: Dalograph, node, budget: int = DEFAULT_PATH_BUDGET) -> set[UPWord]:
    return {induced_sequence(g, p) for p in continuations(g, (node,), budget)}


# strategies -----------------------------------------------------------------


class Strategy:
    """One chosen successor per node of a dalograph."""

    __slots__ = ("graph", "choice")

    def __init__(self, graph: Dalograph, choice: Mapping):
        choice = dict(choice)
        missing = [o for o in graph.nodes if o not in choice]
        if missing:
            raise InvalidStrategy(f"no choice for node(s) {missing!r}")
        for o, t in choice.items():
            if not graph.has_arc(o, t):
                raise InvalidStrategy(f"choice {o!r} -> {t!r} is not an arc")
        self.graph = graph
        self.choice = choice

    def __getitem__(self, node):
        return self.choice[node]

    def __eq__(self, other) -> bool:
        return isinstance(other, Strategy) and self.graph == other.graph and self.choice == other.choice

    def __hash__(self) -> int:
        return hash(frozenset(self.choice.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{o!r}->{self.choice[o]!r}" for o in self.graph.nodes)
        return f"Strategy({body})"

    def restrict_to(self, graph: Dalograph) -> Strategy:
        return Strategy(graph, {o: self.choice[o] for o in graph.nodes})


def induced_path(s: Strategy, node) -> Path:
    walk = [node]
    seen = {node}
    while True:
        nxt = s.choice[walk[-1]]
        walk.append(nxt)
        if nxt in seen:
            return Path.from_looping_walk(walk)
        seen.add(nxt)


def strategies(g: Dalograph) -> Iterator[Strategy]:
    """All strategies of ``g`` in lexicographic order of choices."""
    from itertools import product

    for combo in product(*(g.successors(o) for o in g.nodes)):
        yield Strategy(g, dict(zip(g.nodes, combo)))


def strategy_count(g: Dalograph) -> int:
    n = 1
    for o in g.nodes:
        n *= g.outdegree(o)
    return n


# text formats ---------------------------------------------------------------


def parse_graph(text: str) -> tuple[Dalograph, dict]:
    """Parse ``node``/``arc`` lines; returns the graph and any extra directives."""
    nodes, arcs, extra = parse_graph_lines(text)
    return Dalograph(arcs, nodes), extra


def parse_graph_lines(text: str, allow_parallel: bool = False) -> tuple[list, list, dict]:
    nodes: list = []
    arcs: list = []
    seen: set = set()
    extra: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "node" and len(parts) == 2:
            nodes.append(parts[1])
        elif kind == "arc" and len(parts) == 4:
            key = (parts[1], parts[2])
            if key in seen and not allow_parallel:
                raise ParseError(f"duplicate arc {parts[1]} -> {parts[2]}", lineno)
            seen.add(key)
            arcs.append((parts[1], parts[2], parts[3]))
        elif kind in ("target", "choose") and len(parts) >= 2:
            extra.setdefault(kind, []).append(tuple(parts[1:]))
        else:
            raise ParseError(f"cannot read {line!r}", lineno)
    return nodes, arcs, extra


def format_graph(g: Dalograph) -> str:
    lines = [f"node {o}" for o in g.nodes]
    lines += [f"arc {s} {t} {label}" for s, t, label in g.arc_list()]
    return "\n".join(lines) + "\n"


def parse_strategy(text: str, g: Dalograph) -> Strategy:
    choice = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "choose" or len(parts) != 3:
            raise ParseError(f"expected 'choose <node> <next>', got {line!r}", lineno)
        choice[parts[1]] = parts[2]
    for o in g.nodes:
        if o not in choice and g.outdegree(o) == 1:
            choice[o] = g.successors(o)[0]
    return Strategy(g, choice)


def format_strategy(s: Strategy) -> str:
    return "".join(f"choose {o} {s.choice[o]}\n" for o in s.graph.nodes)


def to_dot(g: Dalograph, strategy: Strategy | None = None, name: str = "dalograph") -> str:
    """Graphviz source; chosen arcs are drawn as doubled edges."""
    lines = [f'digraph "{name}" {{', "  node [shape=box];"]
    for o in g.nodes:
        lines.append(f'  "{o}";')
    for s, t, label in g.arc_list():
        style = ""
        if strategy is not None and strategy.choice.get(s) == t:
            style = ', color="black:invis:black"'
        lines.append(f'  "{s}" -> "{t}" [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_dalograph(rng, n_nodes: int, n_arcs: int, labels) -> Dalograph:
    """Random dalograph on nodes ``0..n_nodes-1`` with ``n_arcs`` arcs (at least one per node)."""
    labels = list(labels)
    pairs = [(s, t) for s in range(n_nodes) for t in range(n_nodes)]
    n_arcs = max(n_nodes, min(n_arcs, len(pairs)))
    chosen = {(s, rng.randrange(n_nodes)) for s in range(n_nodes)}
    rest = [p for p in pairs if p not in chosen]
    rng.shuffle(rest)
    chosen.update(rest[: n_arcs - len(chosen)])
    return Dalograph({p: rng.choice(labels) for p in sorted(chosen)})
