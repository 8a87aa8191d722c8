"""Preferences over ultimately periodic words and condition checkers.

A preference is a decidable strict relation ``less(a, b)``, read "a is less
preferred than b". The checkers quantify over a finite universe of words and
over finite prefixes of bounded length, so a pass only certifies the
property on that universe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from .errors import ParseError
from .order import (
    PASS,
    Check,
    FiniteRelation,
    LabelOrder,
    check_strict_weak_order,
    format_label_order,
    parse_label_order,
)
from .upword import UPWord, element_set, format_upword, horizon, limit_set, parse_upword, power, prepend

DEFAULT_PREFIX_BOUND = 6


class Preference:
    """Base class; subclasses implement :meth:`less`."""

    name = "preference"

    def less(self, a: UPWord, b: UPWord) -> bool:
        raise NotImplementedError

    def __call__(self, a: UPWord, b: UPWord) -> bool:
        return self.less(a, b)

    def restrict(self, words: Iterable[UPWord]) -> FiniteRelation:
        return FiniteRelation.restrict(self.less, words)


class FunctionPreference(Preference):
    def __init__(self, fn: Callable[[UPWord, UPWord], bool], name: str = "function"):
        self.fn = fn
        self.name = name

    def less(self, a, b):
        return bool(self.fn(a, b))

    def __repr__(self):
        return f"FunctionPreference({self.name})"


class TablePreference(Preference):
    """Exactly the listed pairs, nothing implied."""

    name = "table"

    def __init__(self, pairs: Iterable[tuple[UPWord, UPWord]] = ()):
        self.pairs = frozenset(pairs)

    def less(self, a, b):
        return (a, b) in self.pairs

    def __repr__(self):
        return f"TablePreference({len(self.pairs)} pairs)"

    def __eq__(self, other):
        return isinstance(other, TablePreference) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)


def table(pairs: Iterable[tuple[UPWord, UPWord]]) -> TablePreference:
    return TablePreference(pairs)


class RankedPreference(Preference):
    def __init__(self, order: LabelOrder):
        self.order = order

    def __repr__(self):
        return f"{type(self).__name__}({dict(sorted(self.order.rank.items()))})"

    def __eq__(self, other):
        return type(self) is type(other) and self.order == other.order

    def __hash__(self):
        return hash((type(self).__name__, self.order))


class Lex(RankedPreference):
    """Lexicographic extension: the first rank-comparable position decides."""

    name = "lex"

    def less(self, a, b):
        level = self.order.level
        for n in range(horizon(a, b)):
            x, y = level(a.letter(n)), level(b.letter(n))
            if x != y:
                return x < y
        return False


class Pareto(RankedPreference):
    name = "pareto"

    def less(self, a, b):
        level = self.order.level
        strict = False
        for n in range(horizon(a, b)):
            x, y = level(a.letter(n)), level(b.letter(n))
            if y < x:
                return False
            strict = strict or x < y
        return strict


def maxmin_less(order: LabelOrder, xs: Iterable, ys: Iterable) -> bool:
    """Max-min order over finite nonempty label sets."""
    a = [order.level(x) for x in xs]
    b = [order.level(y) for y in ys]
    return max(a) < max(b) or (max(a) == max(b) and min(a) < min(b))


def maxminlight_less(order: LabelOrder, xs: Iterable, ys: Iterable) -> bool:
    a = [order.level(x) for x in xs]
    b = [order.level(y) for y in ys]
    # nothing in B below anything in A, and something in A below something in B
    return min(b) >= max(a) and min(a) < max(b)


class MaxMinLimitSet(RankedPreference):
    name = "maxmin-ls"

    def less(self, a, b):
        return maxmin_less(self.order, limit_set(a), limit_set(b))


class MaxMinLightLimitSet(RankedPreference):
    name = "maxminlight-ls"

    def less(self, a, b):
        return maxminlight_less(self.order, limit_set(a), limit_set(b))


class MaxMinSet(RankedPreference):
    name = "maxmin-set"

    def less(self, a, b):
        return maxmin_less(self.order, element_set(a), element_set(b))


def lex(order: LabelOrder) -> Lex:
    return Lex(order)


def pareto(order: LabelOrder) -> Pareto:
    return Pareto(order)


def maxmin_limit_set(order: LabelOrder) -> MaxMinLimitSet:
    return MaxMinLimitSet(order)


def maxminlight_limit_set(order: LabelOrder) -> MaxMinLightLimitSet:
    return MaxMinLightLimitSet(order)


def maxmin_set(order: LabelOrder) -> MaxMinSet:
    return MaxMinSet(order)


BUILTINS = {
    "lex": Lex,
    "pareto": Pareto,
    "maxmin-ls": MaxMinLimitSet,
    "maxminlight-ls": MaxMinLightLimitSet,
    "maxmin-set": MaxMinSet,
}


# preference files -------------------------------------------------------------


def parse_preference(text: str) -> Preference:
    """Read a builtin name followed by ``rank`` lines, or ``pair a < b`` lines."""
    kind = None
    rank_lines: list[str] = []
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head in BUILTINS and len(line.split()) == 1:
            if kind is not None:
                raise ParseError(f"second preference kind {head!r}", lineno)
            kind = head
        elif head == "rank":
            rank_lines.append(line)
            try:
                parse_label_order(line)
            except ParseError as err:
                raise ParseError(str(err).split(": ", 1)[-1], lineno) from None
        elif head == "pair":
            body = line[len("pair"):]
            if body.count("<") != 1:
                raise ParseError("expected 'pair <word> < <word>'", lineno)
            left, right = body.split("<")
            try:
                pairs.append((parse_upword(left.strip()), parse_upword(right.strip())))
            except ValueError as err:
                raise ParseError(str(err), lineno) from None
        else:
            raise ParseError(f"cannot read {line!r}", lineno)
    if kind is not None and pairs:
        raise ParseError("a preference file holds either a builtin or pairs, not both")
    if kind is not None:
        return BUILTINS[kind](parse_label_order("\n".join(rank_lines)))
    if rank_lines:
        raise ParseError("rank lines given without a preference kind")
    return TablePreference(pairs)


def format_preference(p: Preference) -> str:
    if isinstance(p, TablePreference):
        rows = sorted(p.pairs)
        return "".join(f"pair {format_upword(a)} < {format_upword(b)}\n" for a, b in rows)
    if isinstance(p, RankedPreference):
        return f"{p.name}\n" + format_label_order(p.order)
    raise TypeError(f"{p!r} has no text form")


# checkers -------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    """Conjunction of named checks over one universe."""

    checks: dict = field(default_factory=dict)
    universe_size: int = 0
    prefix_bound: int = DEFAULT_PREFIX_BOUND

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def __bool__(self):
        return self.ok

    def __str__(self):
        scope = f"{self.universe_size} words, prefixes up to length {self.prefix_bound}"
        lines = [f"{name}: {check}" for name, check in self.checks.items()]
        verdict = "PASS on universe" if self.ok else "FAIL"
        return "\n".join(lines + [f"verdict: {verdict} ({scope})"])


def _split_points(w: UPWord, bound: int):
    """Pairs ``(u, rest)`` with ``w = u . rest`` and ``1 <= |u| <= bound``."""
    for k in range(1, bound + 1):
        yield w.take(k), w.drop(k)


def check_E_prefix(p: Preference, universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND) -> Check:
    words = sorted(set(universe))
    pool = set(words)
    for x, y in product(words, repeat=2):
        if not p(x, y):
            continue
        for k in range(1, prefix_bound + 1):
            u = x.take(k)
            if y.take(k) != u:
                break
            a, b = x.drop(k), y.drop(k)
            if a in pool and b in pool and not p(a, b):
                return Check(False, (u, a, b), f"u.a < u.b but not a < b with u={u!r}")
    return PASS


def check_subcontinuous(p: Preference, universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND) -> Check:
    words = sorted(set(universe))
    pool = set(words)
    for y in words:
        for u, a in _split_points(y, prefix_bound):
            if a not in pool or power(u) not in pool:
                continue
            if p(a, y) and p(power(u), a):
                return Check(False, (u, a), f"a < u.a and u^w < a with u={u!r}")
    return PASS


def check_A_transitive(p: Preference, universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND) -> Check:
    words = sorted(set(universe))
    pool = set(words)
    less = [(a, b) for a, b in product(words, repeat=2) if p(a, b)]
    for a, b in less:
        for x, c in less:
            for k in range(0, prefix_bound + 1):
                if x.drop(k) != b:
                    continue
                u = x.take(k)
                ua = prepend(u, a)
                if ua in pool and not p(ua, c):
                    return Check(False, (a, b, u, c), f"a < b and u.b < c but not u.a < c with u={u!r}")
    return PASS


def check_alt_subcontinuous(
    p: Preference, universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND
) -> Check:
    words = sorted(set(universe))
    pool = set(words)
    for a, y in product(words, repeat=2):
        if not p(a, y):
            continue
        for t, b in _split_points(y, prefix_bound):
            if b not in pool:
                continue
            for z in words:
                for v, rest in _split_points(z, prefix_bound):
                    if rest != a:
                        continue
                    cycle = power(t + v)
                    if cycle not in pool:
                        continue
                    if not p(z, b) and not p(a, cycle):
                        return Check(False, (a, t, b, v), "a < t.b but neither v.a < b nor a < (tv)^w")
    return PASS


def find_w_set(
    less: Callable[[UPWord, UPWord], bool],
    a: UPWord,
    b: UPWord,
    pool: Iterable[tuple],
    words: set | None = None,
) -> frozenset | None:
    """A set ``W`` of finite words with ``W.a < W.b``, or None.

    ``W`` must avoid the empty word and hold at most one word of length 1.
    Sets satisfying "every u in W has some v in W with u.a < v.b" are closed
    under union, so the largest one inside a candidate pool is a greatest
    fixpoint; trying each choice of the single length-1 word covers every
    admissible ``W``. With ``words`` given, only words inside it are used.
    """
    pool = sorted({tuple(u) for u in pool if len(u) >= 1})
    if words is not None:
        pool = [u for u in pool if prepend(u, a) in words and prepend(u, b) in words]
    longer = [u for u in pool if len(u) >= 2]
    singles = [u for u in pool if len(u) == 1]
    for chosen in [None] + singles:
        w = set(longer) | ({chosen} if chosen else set())
        changed = True
        while changed and w:
            changed = False
            for u in sorted(w):
                ua = prepend(u, a)
                if not any(less(ua, prepend(v, b)) for v in w):
                    w.discard(u)
                    changed = True
        if w:
            return frozenset(w)
    return None


def prefix_pool(universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND) -> set[tuple]:
    return {w.take(k) for w in universe for k in range(1, prefix_bound + 1)}


def check_gen_E_prefix(p: Preference, universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND) -> Check:
    words = sorted(set(universe))
    pool = prefix_pool(words, prefix_bound)
    space = set(words)
    for a, b in product(words, repeat=2):
        if p(a, b):
            continue
        w = find_w_set(p, a, b, pool, space)
        if w is not None:
            return Check(False, (tuple(sorted(w)), a, b), "W.a < W.b but not a < b")
    return PASS


def check_sufficient_condition(
    p: Preference, universe: Iterable[UPWord], prefix_bound=DEFAULT_PREFIX_BOUND
) -> ConditionReport:
    words = sorted(set(universe))
    return ConditionReport(
        {
            "strict weak order": check_strict_weak_order(p.restrict(words)),
            "E-prefix": check_E_prefix(p, words, prefix_bound),
            "subcontinuous": check_subcontinuous(p, words, prefix_bound),
        },
        len(words),
        prefix_bound,
    )
