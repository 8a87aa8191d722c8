"""Named fixtures reproducing the worked examples, with expected verdicts.

Labelled multi-step arrows are single arcs carrying one symbolic label, and
an exit towards an infinite word ``alpha`` is an arc into a fresh node whose
self-loop repeats the same label, so the exit contributes ``a^omega``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .closure import Universe, check_necessary_condition, close_set_rules, default_universe
from .dalograph import Dalograph, Strategy, embed_node_labelled, embed_with_sink, strategy_count
from .equilibrium import Context, brute_force_equilibria, construct_equilibrium, verify_local
from .order import LabelOrder
from .preference import Preference, TablePreference, lex, maxmin_set
from .routing import RoutingProblem, TablePolicy, brute_force_routing, check_policy_total_order_iff, problem_words
from .upword import UPWord, parse_upword

HAS_EQUILIBRIUM = "HAS_EQUILIBRIUM"
NO_EQUILIBRIUM = "NO_EQUILIBRIUM"
NECESSARY_VIOLATED = "NECESSARY_VIOLATED"
OPEN = "OPEN"
MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    summary: str
    expected: str
    runner: Callable[[], tuple[str, str]]

    def run(self) -> tuple[str, str]:
        return self.runner()


def w(text: str) -> UPWord:
    return parse_upword(text)


def _pairs(rows) -> TablePreference:
    return TablePreference((w(a), w(b)) for a, b in rows)


# graphs -------------------------------------------------------------------------


def five_label_graph() -> Dalograph:
    return Dalograph(
        [("n1", "n2", "a1"), ("n2", "n2", "a2"), ("n3", "n1", "a3"), ("n3", "n4", "a4"), ("n4", "n3", "a5")]
    )


def node_labelled_source() -> tuple[dict, list]:
    labels = {"n1": "a1", "n2": "a2", "n3": "a3", "n4": "a4", "n5": "a5", "n6": "a6"}
    arcs = [("n1", "n2"), ("n2", "n1"), ("n2", "n3"), ("n3", "n3"),
            ("n4", "n5"), ("n5", "n6"), ("n6", "n5"), ("n6", "n4")]
    return labels, arcs


def node_labelled_picture() -> Dalograph:
    return Dalograph([
        ("n1", "n2", "a1"), ("n2", "n1", "a2"), ("n2", "n3", "a2"), ("n3", "n3", "a3"),
        ("n4", "n5", "a4"), ("n5", "n6", "a5"), ("n6", "n5", "a6"), ("n6", "n4", "a6"),
    ])


def dead_end_source() -> list:
    return [("n1", "n3", "a1"), ("n3", "n1", "a2"), ("n3", "n2", "a3"), ("n3", "n4", "a4")]


def finite_path_source() -> list:
    return [("n1", "n2", "a1"), ("n2", "n1", "a2"), ("n2", "n3", "a3"), ("n3", "n2", "a4")]


def numeric_graph() -> Dalograph:
    return Dalograph([
        ("o", "m", "2"), ("m", "r", "3"), ("r", "r", "0"), ("o", "b", "1"),
        ("b", "o", "1"), ("o'", "b", "0"), ("o'", "m", "0"), ("o'", "r", "1"),
    ])


def numeric_strategy(g: Dalograph) -> Strategy:
    return Strategy(g, {"o": "b", "b": "o", "m": "r", "r": "r", "o'": "r"})


def digits() -> LabelOrder:
    return LabelOrder({str(i): i for i in range(10)})


def schematic_graph() -> Dalograph:
    """Entry ``u`` into a loop ``a v``, with an escape ``b`` from the entry node."""
    return Dalograph([
        ("s", "o", "u"), ("o", "p", "a"), ("p", "o", "v"), ("s", "e", "b"), ("e", "e", "b"), ("p", "e", "b"),
    ])


def ring_graph() -> Dalograph:
    return Dalograph([
        ("n1", "n2", "c"), ("n2", "n1", "c"), ("n1", "t1", "a"), ("t1", "t1", "a"),
        ("n2", "t2", "a"), ("t2", "t2", "a"),
    ])


def ring_preference() -> TablePreference:
    return _pairs([("c;c", "a;a"), ("a;a", "c;a")])


def coordination_graph() -> Dalograph:
    return Dalograph([
        ("o1", "m", "v1"), ("o1", "p1", "u1"), ("o2", "m", "v2"), ("o2", "p2", "u2"),
        ("m", "p1", "x1"), ("m", "p2", "x2"), ("p1", "q", "y1"), ("p2", "q", "y2"),
        ("p1", "e1", "a1"), ("e1", "e1", "a1"), ("p2", "e2", "a2"), ("e2", "e2", "a2"),
        ("q", "f1", "b1"), ("f1", "f1", "b1"), ("q", "f2", "b2"), ("f2", "f2", "b2"),
    ])


def coordination_preference() -> TablePreference:
    return _pairs([
        ("u1 y1 ; b2", "v1 x1 ; a1"), ("u2 y2 ; b1", "v2 x2 ; a2"),
        ("v1 x2 ; a2", "u1 ; a1"), ("v2 x1 ; a1", "u2 ; a2"),
        ("v1 x1 y1 ; b2", "u1 ; a1"), ("v2 x2 y2 ; b1", "u2 ; a2"),
        ("v1 x2 y2 ; b2", "u1 ; a1"), ("v2 x1 y1 ; b1", "u2 ; a2"),
    ])


def triskele_graph() -> Dalograph:
    arcs = []
    for i in (1, 2, 3):
        arcs += [("c", f"p{i}", f"x{i}"), (f"p{i}", "c", f"y{i}"),
                 (f"p{i}", f"e{i}", f"a{i}"), (f"e{i}", f"e{i}", f"a{i}")]
    return Dalograph(arcs)


def triskele_preference() -> TablePreference:
    return _pairs([
        ("; a1", "y1 x2 ; a2"), ("; a2", "y2 x3 ; a3"), ("; a3", "y3 x1 ; a1"),
        ("; x1 y1", "x3 ; a3"), ("; x2 y2", "x1 ; a1"), ("; x3 y3", "x2 ; a2"),
    ])


def mms_graph() -> Dalograph:
    return Dalograph([("T", "A", "0"), ("A", "T", "2"), ("T", "B", "1"), ("B", "B", "1")])


def mms_universe() -> Universe:
    return Universe.around([w("2;02"), w("2;1"), w(";02"), w(";1")], 2)


def conclusion_graph() -> Dalograph:
    return Dalograph([
        ("A", "A", "a"), ("B", "B", "b"), ("C", "A", "c"), ("C", "B", "c"), ("D", "A", "d"), ("D", "B", "d"),
    ])


def conclusion_preference() -> TablePreference:
    return _pairs([("a;a", "cb;b"), ("cb;b", "da;a"), ("a;a", "da;a"),
                   ("db;b", "ca;a"), ("ca;a", "b;b"), ("db;b", "b;b")])


def routing_prefix_problem() -> tuple[RoutingProblem, TablePolicy]:
    rp = RoutingProblem((("s", "m", "s"), ("m", "T", "a"), ("m", "T", "b")), "T")
    return rp, TablePolicy.from_ranking([("b",), ("s", "a"), ("s", "b"), ("a",)])


def routing_cycle_problem() -> tuple[RoutingProblem, TablePolicy]:
    rp = RoutingProblem((("n", "n1", "c"), ("n1", "n", "c"), ("n", "T", "t"), ("n1", "T", "t")), "T")
    return rp, TablePolicy.from_ranking([("t",), ("c", "t")])


# runners --------------------------------------------------------------------------


def _solve(g: Dalograph, pref: Preference, extra: str = "") -> tuple[str, str]:
    report = construct_equilibrium(Context(g, pref))
    verdict = HAS_EQUILIBRIUM if report.verified else MISMATCH
    return verdict, (extra + "\n" if extra else "") + str(report)


def _brute(g: Dalograph, pref: Preference) -> tuple[str, str]:
    found = brute_force_equilibria(Context(g, pref))
    total = strategy_count(g)
    verdict = NO_EQUILIBRIUM if not found else HAS_EQUILIBRIUM
    return verdict, f"{len(found)} equilibria among {total} strategies"


def _run_five_label():
    g = five_label_graph()
    return _solve(g, lex(LabelOrder({f"a{i}": i for i in range(1, 6)})))


def _run_node_labels():
    labels, arcs = node_labelled_source()
    g = embed_node_labelled(labels, arcs)
    if g != node_labelled_picture():
        return MISMATCH, "embedding differs from the pictured dalograph"
    return _solve(g, lex(LabelOrder({f"a{i}": i for i in range(1, 7)})), "embedding matches the picture")


def _run_dead_ends():
    g = embed_with_sink(dead_end_source())
    added = len(g) - len(dead_end_source())
    if (len(g.nodes), added) != (5, 3):
        return MISMATCH, f"expected 1 extra node and 3 extra arcs, got {len(g.nodes) - 4} and {added}"
    order = LabelOrder({"dl": 0, "a1": 1, "a2": 2, "a3": 3, "a4": 4})
    return _solve(g, lex(order), "1 extra node, 3 extra arcs")


def _run_finite_paths():
    g = embed_with_sink(finite_path_source(), all_nodes=True)
    added = len(g) - len(finite_path_source())
    if added != 4:
        return MISMATCH, f"expected 4 extra arcs, got {added}"
    order = LabelOrder({"dl": 0, "a1": 1, "a2": 2, "a3": 3, "a4": 4})
    return _solve(g, lex(order), "3 dummy arcs and a dummy loop")


def _run_numeric():
    g = numeric_graph()
    ctx = Context(g, lex(digits()))
    s = numeric_strategy(g)
    at_o2, at_o = verify_local(ctx, s, "o'"), verify_local(ctx, s, "o")
    note = f"pictured strategy: local at o' {'yes' if at_o2 else 'no'}, local at o {'yes' if at_o else 'no'}"
    if not at_o2 or at_o:
        return MISMATCH, note
    return _solve(g, lex(digits()), note)


def _run_schematic():
    order = LabelOrder({"b": 0, "u": 1, "v": 1, "a": 2})
    return _solve(schematic_graph(), lex(order))


def _run_mms():
    report = check_necessary_condition(maxmin_set(digits()), mms_universe())
    verdict = NECESSARY_VIOLATED if report.violated else MISMATCH
    found = brute_force_equilibria(Context(mms_graph(), maxmin_set(digits())))
    return verdict, f"{report}\nwitness graph: {len(found)} equilibria"


def _run_routing(build):
    rp, policy = build()
    found = brute_force_routing(rp, policy)
    report = check_policy_total_order_iff(policy, problem_words(rp))
    verdict = NO_EQUILIBRIUM if not found else HAS_EQUILIBRIUM
    return verdict, f"{len(found)} routing equilibria\n{report}"


def _run_conclusion():
    g = conclusion_graph()
    pref = conclusion_preference()
    necessary = check_necessary_condition(pref, default_universe(g, 2))
    found = brute_force_equilibria(Context(g, pref))
    return OPEN, f"{necessary}\nsample graph: {len(found)} equilibria; existence for all graphs is open"


def _run_triskele():
    verdict, text = _brute(triskele_graph(), triskele_preference())
    sets = close_set_rules(triskele_preference().pairs, default_universe(triskele_graph(), 2))
    flagged = sets.reflexive()
    text += f"\nexperimental set rules: {len(flagged)} reflexive set pairs"
    return verdict, text


ENTRIES = [
    GalleryEntry("five-label", "five-label dalograph under lex", HAS_EQUILIBRIUM, _run_five_label),
    GalleryEntry("node-labels", "node-labelled digraph moved onto arcs", HAS_EQUILIBRIUM, _run_node_labels),
    GalleryEntry("dead-ends", "dead ends repaired with a dummy sink", HAS_EQUILIBRIUM, _run_dead_ends),
    GalleryEntry("finite-paths", "finite paths through dummy arcs from every node", HAS_EQUILIBRIUM,
                 _run_finite_paths),
    GalleryEntry("numeric-lex", "strategy locally stable at o' but not at o", HAS_EQUILIBRIUM, _run_numeric),
    GalleryEntry("schematic", "path u(av)^w with an escape, under lex", HAS_EQUILIBRIUM, _run_schematic),
    GalleryEntry("ring", "c^w < a^w < ca^w on a two-node ring", NO_EQUILIBRIUM,
                 lambda: _brute(ring_graph(), ring_preference())),
    GalleryEntry("coordination-1", "two nodes wanting incompatible exits", NO_EQUILIBRIUM,
                 lambda: _brute(coordination_graph(), coordination_preference())),
    GalleryEntry("triskele", "three branches around a centre", NO_EQUILIBRIUM, _run_triskele),
    GalleryEntry("mms-refutation", "max-min set order derives a reflexive pair", NECESSARY_VIOLATED, _run_mms),
    GalleryEntry("routing-prefix", "policy that is not E-prefix", NO_EQUILIBRIUM,
                 lambda: _run_routing(routing_prefix_problem)),
    GalleryEntry("routing-cycle", "policy with v < u.v", NO_EQUILIBRIUM,
                 lambda: _run_routing(routing_cycle_problem)),
    GalleryEntry("conclusion-open", "A-transitive table with no E-prefix total extension", OPEN, _run_conclusion),
]

BY_NAME = {e.name: e for e in ENTRIES}
