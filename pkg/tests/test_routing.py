import random

import pytest

import randgen
from pathequil import gallery
from pathequil.dalograph import Path, strategies
from pathequil.equilibrium import Context, is_equilibrium
from pathequil.errors import InvalidTarget, NotTotalOnSample, ParseError
from pathequil.order import LabelOrder
from pathequil.routing import (
    MinHop,
    MinHopLex,
    TablePolicy,
    Widest,
    brute_force_routing,
    check_policy_sufficient,
    check_policy_total_order_iff,
    cycle_counterexample,
    embed,
    format_policy,
    format_routing,
    parse_policy,
    parse_routing,
    prefix_counterexample,
    problem_words,
    route,
    solve_routing,
    strategy_to_routing,
    verify_routing,
)

WIDTHS = LabelOrder({"a": 1, "b": 2, "c": 3})


def widest_oracle(rp, order):
    """Best bottleneck to the target, by Bellman-Ford style relaxation."""
    best = {rp.target: float("inf")}
    for _ in rp.nodes:
        for s, t, label in rp.arcs:
            if t in best:
                best[s] = max(best.get(s, float("-inf")), min(order.level(label), best[t]))
    return best


def test_min_hop_routes_follow_bfs():
    rng = random.Random(1)
    for _ in range(50):
        rp = randgen.topology(rng)
        report = solve_routing(rp, MinHop())
        assert report.verified
        dist = rp.bfs_distances()
        for o in rp.sources:
            assert len(report.routes[o]) == dist[o]


def test_widest_routes_reach_the_best_bottleneck():
    rng = random.Random(2)
    for _ in range(50):
        rp = randgen.topology(rng)
        report = solve_routing(rp, Widest(WIDTHS))
        assert report.verified
        best = widest_oracle(rp, WIDTHS)
        for o in rp.sources:
            assert min(WIDTHS.level(a) for a in report.routes[o]) == best[o]


def test_sufficient_policies_are_solved_through_the_embedding():
    rng = random.Random(3)
    for _ in range(30):
        rp = randgen.topology(rng)
        for policy in (MinHop(), MinHopLex(), Widest(WIDTHS)):
            assert check_policy_sufficient(policy, problem_words(rp)).ok
            report = solve_routing(rp, policy)
            assert report.verified
            assert report.method.startswith("constructed")


def test_embedding_matches_routing_strategies():
    rng = random.Random(4)
    for _ in range(30):
        rp = randgen.topology(rng, max_nodes=5)
        g, pref = embed(rp, MinHop())
        ctx = Context(g, pref)
        reaching = []
        for s in strategies(g):
            words = [ctx.seq(Path.from_looping_walk(_walk(s, o))) for o in rp.sources]
            if all(w.period == ("dl",) for w in words):
                reaching.append(strategy_to_routing(rp, s))
        # every routing strategy whose routes all reach the target appears exactly once
        expected = [c for c in _all_choices(rp) if all(route(rp, c, o) is not None for o in rp.sources)]
        assert sorted(map(_key, reaching)) == sorted(map(_key, expected))
        for s in strategies(g):
            if is_equilibrium(ctx, s):
                assert verify_routing(rp, MinHop(), strategy_to_routing(rp, s)).verified


def _walk(s, o):
    walk, seen = [o], {o}
    while True:
        walk.append(s[walk[-1]])
        if walk[-1] in seen:
            return walk
        seen.add(walk[-1])


def _all_choices(rp):
    from itertools import product

    for combo in product(*(rp.out_arcs(o) for o in rp.sources)):
        yield dict(zip(rp.sources, combo))


def _key(choice):
    return tuple(sorted(choice.items()))


def test_gallery_counterexamples_have_no_equilibrium():
    for build in (gallery.routing_prefix_problem, gallery.routing_cycle_problem):
        rp, policy = build()
        assert brute_force_routing(rp, policy) == []
        assert not solve_routing(rp, policy).verified


def test_emitted_counterexamples_have_no_equilibrium():
    rp, policy = gallery.routing_prefix_problem()
    report = check_policy_total_order_iff(policy, problem_words(rp))
    assert not report.checks["E-prefix"]
    kinds = {kind: n for kind, _, n in report.counterexamples}
    assert kinds["prefix"] == 0 and all(n == 0 for n in kinds.values())
    rp, policy = gallery.routing_cycle_problem()
    report = check_policy_total_order_iff(policy, problem_words(rp))
    assert [(kind, n) for kind, _, n in report.counterexamples] == [("cycle", 0)]


def test_random_total_policies():
    rng = random.Random(5)
    for _ in range(30):
        rp = randgen.topology(rng, max_nodes=5)
        words = problem_words(rp)
        rng.shuffle(words)
        policy = TablePolicy.from_ranking(words)
        report = check_policy_total_order_iff(policy, words)
        for _, cx, n in report.counterexamples:
            assert n == 0
            assert brute_force_routing(cx, policy) == []


def test_counterexample_shapes():
    rp = prefix_counterexample(("u",), ("v", "w"), ("x",))
    assert sorted(rp.simple_route_words("s")) == [("u", "v", "w"), ("u", "x")]
    rp = cycle_counterexample(("c",), ("t",))
    assert sorted(rp.simple_route_words("n")) == [("c", "t"), ("t",)]


def test_total_order_check_needs_totality():
    with pytest.raises(NotTotalOnSample):
        check_policy_total_order_iff(TablePolicy([]), [("a",), ("b",)])


def test_parallel_arcs_fall_back_to_search():
    rp = parse_routing("arc s T a\narc s T b\ntarget T\n")
    assert rp.has_parallel_arcs()
    report = solve_routing(rp, Widest(WIDTHS))
    assert report.verified and report.routes["s"] == ("b",)
    assert report.method == "exhaustive search"


def test_invalid_targets():
    with pytest.raises(InvalidTarget):
        parse_routing("arc T s a\narc s T a\ntarget T\n")
    with pytest.raises(InvalidTarget):
        parse_routing("arc s s a\narc t T a\ntarget T\n")
    with pytest.raises(ParseError):
        parse_routing("arc s T a\n")


def test_policy_semantics():
    assert MinHop()(("a", "b"), ("c",))
    assert not MinHop()(("a",), ("c",))
    assert MinHopLex()(("b",), ("a",))
    assert Widest(WIDTHS)(("c", "a"), ("b",))
    assert Widest(WIDTHS)(("b",), ())
    assert not Widest(WIDTHS)(("b", "c"), ("b",))


def test_routing_round_trip():
    rng = random.Random(6)
    for _ in range(20):
        rp = parse_routing(format_routing(randgen.topology(rng)))
        assert parse_routing(format_routing(rp)) == rp


@pytest.mark.parametrize("policy", [MinHop(), MinHopLex(), Widest(WIDTHS), TablePolicy([(("a",), ("b", "c"))])])
def test_policy_round_trip(policy):
    again = parse_policy(format_policy(policy))
    assert format_policy(again) == format_policy(policy)
