import random

import pytest

import randgen
from pathequil import gallery
from pathequil.dalograph import (
    Dalograph,
    Path,
    Strategy,
    check_walk,
    continuations,
    eligible_sequences,
    embed_node_labelled,
    embed_with_sink,
    format_graph,
    format_strategy,
    induced_path,
    induced_sequence,
    is_looping,
    parse_graph,
    parse_strategy,
    strategies,
    strategy_count,
    to_dot,
)
from pathequil.errors import (
    DummyLabelClash,
    DuplicateArc,
    InvalidStrategy,
    InvalidWalk,
    MissingLabel,
    ParseError,
    PathBudgetExceeded,
    ZeroOutdegree,
)
from pathequil.upword import parse_upword


def naive_walks(g, walk):
    """Looping walks extending ``walk``, by structural recursion on one more node."""
    if is_looping(walk):
        return {walk}
    out = set()
    for q in g.successors(walk[-1]):
        out |= naive_walks(g, walk + (q,))
    return out


def test_continuations_match_naive_recursion():
    rng = random.Random(5)
    for _ in range(150):
        g = randgen.graph(rng)
        for o in g.nodes:
            got = [p.walk for p in continuations(g, (o,))]
            assert got == sorted(got)
            assert set(got) == naive_walks(g, (o,))
            for p in continuations(g, (o,)):
                for k in range(1, len(p.walk)):
                    prefix = p.walk[:k]
                    assert p in continuations(g, prefix)


def test_random_walk_growth_keeps_the_loop_last():
    rng = random.Random(6)
    for _ in range(200):
        g = randgen.graph(rng)
        walk = (rng.choice(g.nodes),)
        while not is_looping(walk):
            walk += (rng.choice(g.successors(walk[-1])),)
            assert walk[-1] not in walk[:-2] or is_looping(walk)
            assert len(set(walk[:-1])) == len(walk) - 1
        p = Path.from_looping_walk(walk)
        assert p.walk == walk
        assert p.loop[0] == walk[-1]


def test_induced_paths_are_eligible():
    rng = random.Random(7)
    for _ in range(60):
        g = randgen.graph(rng, max_nodes=4, max_arcs=7)
        for s in strategies(g):
            for o in g.nodes:
                assert induced_sequence(g, induced_path(s, o)) in eligible_sequences(g, o)


def test_five_label_example():
    g = gallery.five_label_graph()
    words = {p.walk: induced_sequence(g, p).pretty() for p in continuations(g, ("n3",))}
    assert words == {
        ("n3", "n1", "n2", "n2"): "a3 a1 a2^ω",
        ("n3", "n4", "n3"): "(a4 a5)^ω",
    }


def test_path_drop_and_nodes():
    p = Path.from_looping_walk(("s", "o", "p", "o"))
    assert (p.entry, p.loop) == (("s",), ("o", "p"))
    assert p.drop(1).walk == ("o", "p", "o")
    assert p.drop(2).walk == ("p", "o", "p")
    assert p.node_at(5) == "o"
    assert p.successor("p") == "o"


def test_node_labels_move_to_arcs():
    labels, arcs = gallery.node_labelled_source()
    assert embed_node_labelled(labels, arcs) == gallery.node_labelled_picture()
    with pytest.raises(MissingLabel):
        embed_node_labelled({"x": "a"}, [("x", "y"), ("y", "x")])


def test_sink_embedding():
    g = embed_with_sink(gallery.dead_end_source())
    assert len(g.nodes) == 5
    assert len(g) == 7
    assert g.label("_sink", "_sink") == "dl"
    assert eligible_sequences(g, "n2") == {parse_upword("; dl")}
    whole = embed_with_sink(gallery.finite_path_source(), all_nodes=True)
    assert len(whole) - len(gallery.finite_path_source()) == 4
    assert parse_upword("a1 a3 ; dl") in eligible_sequences(whole, "n1")


def test_sink_embedding_validates_on_random_input():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(1, 5)
        arcs = {(rng.randrange(n), rng.randrange(n)): rng.choice("ab") for _ in range(rng.randint(0, 6))}
        g = embed_with_sink([(s, t, a) for (s, t), a in arcs.items()], range(n))
        assert all(g.outdegree(o) >= 1 for o in g.nodes)


def test_sink_embedding_leaves_complete_graphs_alone():
    arcs = [("a", "a", "x")]
    assert embed_with_sink(arcs) == Dalograph(arcs)
    with pytest.raises(DummyLabelClash):
        embed_with_sink([("a", "b", "dl")])


def test_validation():
    with pytest.raises(ZeroOutdegree):
        Dalograph([("a", "b", "x")])
    with pytest.raises(DuplicateArc):
        Dalograph([("a", "a", "x"), ("a", "a", "y")])
    g = Dalograph([("a", "a", "x")])
    with pytest.raises(InvalidWalk):
        check_walk(g, ("a", "b"))
    with pytest.raises(InvalidStrategy):
        Strategy(g, {})


def test_budget():
    full = Dalograph([(s, t, "a") for s in range(5) for t in range(5)])
    assert len(continuations(full, (0,), 10**6)) > 20
    with pytest.raises(PathBudgetExceeded):
        continuations(full, (0,), 20)


def test_strategy_count_and_enumeration():
    g = gallery.numeric_graph()
    assert strategy_count(g) == 6
    assert len(list(strategies(g))) == 6


def test_graph_text_round_trip():
    rng = random.Random(9)
    for _ in range(50):
        g = randgen.graph(rng)
        g = Dalograph([(str(s), str(t), a) for s, t, a in g.arc_list()])
        again, extra = parse_graph(format_graph(g))
        assert again == g and extra == {}


def test_strategy_text_round_trip():
    g = gallery.numeric_graph()
    s = gallery.numeric_strategy(g)
    assert parse_strategy(format_strategy(s), g) == s
    # single-successor nodes may be left out
    assert parse_strategy("choose o b\nchoose o' r\n", g) == s


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("arc a a x\nedge a b\n")
    with pytest.raises(ParseError):
        parse_graph("arc a a x\narc a a y\n")


def test_dot_marks_chosen_arcs():
    g = gallery.numeric_graph()
    dot = to_dot(g, gallery.numeric_strategy(g))
    assert dot.startswith('digraph "dalograph"')
    assert dot.count("black:invis:black") == len(g.nodes)
    assert to_dot(g).count("->") == len(g)
