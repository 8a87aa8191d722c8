import random

import pytest

import randgen
from pathequil import gallery
from pathequil.dalograph import Dalograph, Strategy, continuations, strategies
from pathequil.equilibrium import (
    Context,
    brute_force_equilibria,
    construct_equilibrium,
    find_hereditary_maximal_path,
    is_equilibrium,
    is_hereditary_maximal,
    is_maximal_continuation,
    is_semi_hereditary_maximal,
    seek_forward,
    verify_global,
    verify_local,
)
from pathequil.errors import CyclicPreference, InvalidWalk, StrategySpaceTooLarge
from pathequil.preference import TablePreference, lex
from pathequil.upword import parse_upword as w


def lex_instances(seed, count, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        g = randgen.graph(rng, **kw)
        yield rng, Context(g, lex(randgen.ranks(rng)))


def all_paths(ctx):
    for o in ctx.graph.nodes:
        yield from ctx.continuations((o,))


def test_maximality_matches_eligible_set():
    for _, ctx in lex_instances(1, 80):
        for p in all_paths(ctx):
            mine = ctx.seq(p)
            best = not any(ctx.less(mine, other) for other in ctx.eligible(p.start))
            assert bool(is_maximal_continuation(ctx, (p.start,), p)) == best


def test_seek_forward_is_involutive():
    for _, ctx in lex_instances(2, 100):
        for p in all_paths(ctx):
            once = seek_forward(ctx, (p.start,), p)
            assert seek_forward(ctx, (p.start,), once) == once


def test_fixpoints_are_semi_hereditary_maximal():
    for _, ctx in lex_instances(3, 100):
        for p in all_paths(ctx):
            f = seek_forward(ctx, (p.start,), p)
            assert is_semi_hereditary_maximal(ctx, (p.start,), f)
            if f == p:
                assert is_semi_hereditary_maximal(ctx, (p.start,), p)


def test_suffix_of_a_fixpoint_is_a_fixpoint():
    for _, ctx in lex_instances(4, 60):
        for p in all_paths(ctx):
            walk = p.walk
            for k in range(1, len(walk) - 1):
                if seek_forward(ctx, walk[:k], p) == p:
                    assert seek_forward(ctx, walk[: k + 1], p) == p


def test_semi_hereditary_implies_hereditary_and_maximal():
    for _, ctx in lex_instances(5, 100):
        for p in all_paths(ctx):
            if is_semi_hereditary_maximal(ctx, (p.start,), p):
                assert is_maximal_continuation(ctx, (p.start,), p)
                assert is_hereditary_maximal(ctx, p)


def test_maximal_with_semi_hereditary_tail():
    for _, ctx in lex_instances(6, 60):
        for p in all_paths(ctx):
            x = p.walk[:2]
            if len(set(x)) < 2:
                continue
            if is_maximal_continuation(ctx, x[:1], p) and is_semi_hereditary_maximal(ctx, x, p):
                assert is_semi_hereditary_maximal(ctx, x[:1], p)


def test_construction_agrees_with_brute_force():
    for _, ctx in lex_instances(7, 100):
        report = construct_equilibrium(ctx)
        assert report.verified and not report.diagnostics
        assert report.strategy in brute_force_equilibria(ctx)


def test_hereditary_maximal_path_from_every_node():
    for _, ctx in lex_instances(8, 50):
        for o in ctx.graph.nodes:
            assert find_hereditary_maximal_path(ctx, o)


def test_coinciding_preferences_give_the_same_verdicts():
    for _, ctx in lex_instances(9, 40, max_nodes=4, max_arcs=7):
        words = sorted({s for o in ctx.graph.nodes for s in ctx.eligible(o)})
        table = TablePreference((a, b) for a in words for b in words if ctx.less(a, b))
        other = Context(ctx.graph, table)
        for s in strategies(ctx.graph):
            assert is_equilibrium(ctx, s) == is_equilibrium(other, s)


def test_subpreference_keeps_equilibria():
    rng = random.Random(10)
    for _ in range(40):
        g = randgen.graph(rng, max_nodes=4, max_arcs=7)
        ctx = Context(g, lex(randgen.ranks(rng)))
        words = sorted({s for o in g.nodes for s in ctx.eligible(o)})
        pairs = [(a, b) for a in words for b in words if ctx.less(a, b)]
        sub = Context(g, TablePreference(p for p in pairs if rng.random() < 0.5))
        for s in brute_force_equilibria(ctx):
            assert is_equilibrium(sub, s)


def test_local_equilibrium_in_numeric_example():
    g = gallery.numeric_graph()
    ctx = Context(g, lex(gallery.digits()))
    s = gallery.numeric_strategy(g)
    assert verify_local(ctx, s, "o'")
    check = verify_local(ctx, s, "o")
    assert not check and check.witness == w("23;0")
    report = verify_global(ctx, s)
    assert not report.verified and "o" in dict(report.failures)
    assert "o'" not in dict(report.failures)


def test_ring_has_no_equilibrium():
    ctx = Context(gallery.ring_graph(), gallery.ring_preference())
    assert brute_force_equilibria(ctx) == []
    # c^w < a^w < ca^w is not transitive, so no best improvement exists at n1
    with pytest.raises(CyclicPreference):
        construct_equilibrium(ctx)


def test_cyclic_preference_is_reported():
    g = Dalograph([("o", "a", "s"), ("o", "b", "s"), ("o", "c", "s"),
                   ("a", "a", "a"), ("b", "b", "b"), ("c", "c", "c")])
    pref = TablePreference([(w("s;a"), w("s;b")), (w("s;b"), w("s;c")), (w("s;c"), w("s;a"))])
    ctx = Context(g, pref)
    p = continuations(g, ("o",))[0]
    with pytest.raises(CyclicPreference):
        seek_forward(ctx, ("o",), p)


def test_walk_must_be_a_prefix():
    ctx = Context(gallery.numeric_graph(), lex(gallery.digits()))
    p = ctx.continuations(("o",))[0]
    with pytest.raises(InvalidWalk):
        is_maximal_continuation(ctx, ("m",), p)


def test_strategy_cap():
    g = Dalograph([(s, t, "a") for s in range(4) for t in range(4)])
    with pytest.raises(StrategySpaceTooLarge):
        brute_force_equilibria(Context(g, lex(randgen.ranks(random.Random(0), "a"))), cap=100)


def test_report_text():
    g = gallery.numeric_graph()
    ctx = Context(g, lex(gallery.digits()))
    text = str(verify_global(ctx, gallery.numeric_strategy(g)))
    assert "verified: no" in text and "node o:" in text
    s = Strategy(g, {"o": "m", "b": "o", "m": "r", "r": "r", "o'": "r"})
    assert verify_global(ctx, s).verified
