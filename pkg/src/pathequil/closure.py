"""Inference-rule closures of preferences over a finite universe of words.

Rule firings that would mention a word outside the universe are skipped, so
every derived pair is genuinely derivable but the derived set may be smaller
than the true closure. A reflexive pair therefore refutes the necessary
condition outright, while its absence proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .dalograph import Dalograph, continuations, induced_sequence
from .errors import ParseError
from .preference import DEFAULT_PREFIX_BOUND, Preference, find_w_set
from .upword import UPWord, format_upword, format_word, parse_upword, power, prepend, strip_prefix, tokenize

RULES = ("ep", "trans", "atrans", "gep")
RULE_SETS = {
    "ep": ("ep",),
    "trans": ("trans",),
    "atrans": ("atrans",),
    "gep": ("gep",),
    "combination": ("atrans", "gep"),
}


@dataclass(frozen=True)
class Universe:
    words: frozenset
    prefixes: frozenset

    def __init__(self, words: Iterable[UPWord], prefixes: Iterable[tuple] = ()):
        object.__setattr__(self, "words", frozenset(words))
        object.__setattr__(self, "prefixes", frozenset(tuple(u) for u in prefixes if len(u) > 0))

    @classmethod
    def around(cls, words: Iterable[UPWord], prefix_bound: int = DEFAULT_PREFIX_BOUND) -> Universe:
        """``words`` with the prefixes of each up to ``prefix_bound`` letters."""
        words = frozenset(words)
        return cls(words, {w.take(k) for w in words for k in range(1, prefix_bound + 1)})

    def __len__(self):
        return len(self.words)


def default_universe(g: Dalograph, prefix_bound: int = DEFAULT_PREFIX_BOUND) -> Universe:
    """Eligible words of ``g``, their suffixes after up to ``prefix_bound`` letters, and pure periods."""
    words = set()
    for o in g.nodes:
        for p in continuations(g, (o,)):
            words.add(induced_sequence(g, p))
    for w in list(words):
        words.add(power(w.period))
        for k in range(1, prefix_bound + 1):
            words.add(w.drop(k))
    return Universe.around(words, prefix_bound)


@dataclass(frozen=True)
class Step:
    """One rule instance: ``rule`` applied to ``premises``, with its parameter."""

    rule: str
    premises: tuple = ()
    param: object = None

    def describe(self) -> str:
        if self.rule in ("ep", "atrans"):
            return f"{self.rule} u={format_word(self.param)}"
        if self.rule == "gep":
            return "gep W={" + ", ".join(format_word(u) for u in self.param) + "}"
        return self.rule


@dataclass
class DerivedRelation:
    base: frozenset
    derived: dict = field(default_factory=dict)
    universe: Universe | None = None
    rules: tuple = ()

    @property
    def pairs(self) -> frozenset:
        return frozenset(self.derived)

    def __contains__(self, pair) -> bool:
        return pair in self.derived

    def __len__(self):
        return len(self.derived)

    def reflexive(self) -> list:
        return sorted(p for p in self.derived if p[0] == p[1])

    def tree(self, pair, indent: int = 0) -> str:
        step = self.derived[pair]
        a, b = pair
        line = f"{'  ' * indent}{a.pretty()} < {b.pretty()}   [{step.describe()}]"
        return "\n".join([line] + [self.tree(q, indent + 1) for q in step.premises])

    def tree_size(self, pair) -> int:
        return 1 + sum(self.tree_size(q) for q in self.derived[pair].premises)


def _pair_str(pair) -> str:
    return f"{format_upword(pair[0])} < {format_upword(pair[1])}"


def _ep(found: dict, u: Universe):
    for x, y in list(found):
        for w in sorted(u.prefixes):
            a, b = strip_prefix(w, x), strip_prefix(w, y)
            if a is not None and b is not None and a in u.words and b in u.words:
                yield (a, b), Step("ep", ((x, y),), w)


def _trans(found: dict, u: Universe):
    after: dict = {}
    for a, b in found:
        after.setdefault(a, []).append(b)
    for a, b in list(found):
        for c in after.get(b, ()):
            yield (a, c), Step("trans", ((a, b), (b, c)))


def _atrans(found: dict, u: Universe):
    before: dict = {}
    for a, b in found:
        before.setdefault(b, []).append(a)
    pool = [()] + sorted(u.prefixes)
    for x, c in list(found):
        for w in pool:
            b = strip_prefix(w, x)
            if b is None:
                continue
            for a in before.get(b, ()):
                wa = prepend(w, a)
                if wa in u.words:
                    yield (wa, c), Step("atrans", ((a, b), (x, c)), w)


def _gep(found: dict, u: Universe):
    def less(p, q):
        return (p, q) in found

    words = sorted(u.words)
    for a in words:
        for b in words:
            if (a, b) in found:
                continue
            w = find_w_set(less, a, b, u.prefixes, u.words)
            if w is None:
                continue
            premises = []
            for x in sorted(w):
                v = next(v for v in sorted(w) if less(prepend(x, a), prepend(v, b)))
                premises.append((prepend(x, a), prepend(v, b)))
            yield (a, b), Step("gep", tuple(premises), tuple(sorted(w)))


_ENGINES = {"ep": _ep, "trans": _trans, "atrans": _atrans, "gep": _gep}


def close(base: Iterable[tuple], universe: Universe, rules: Iterable[str]) -> DerivedRelation:
    """Least fixpoint of base injection plus ``rules`` on ``universe``.

    Rules fire in rounds, each round only using pairs known at its start, so
    recorded derivations are as shallow as the rounds allow.
    """
    rules = tuple(rules)
    unknown = set(rules) - set(_ENGINES)
    if unknown:
        raise ValueError(f"unknown rule(s) {sorted(unknown)}; known: {', '.join(RULES)}")
    base = frozenset(base)
    found: dict = {}
    for pair in sorted(base):
        if pair[0] in universe.words and pair[1] in universe.words:
            found[pair] = Step("base")
    while True:
        fresh: dict = {}
        for rule in rules:
            for pair, step in _ENGINES[rule](found, universe):
                if pair not in found and pair not in fresh:
                    fresh[pair] = step
        if not fresh:
            break
        found.update(fresh)
    return DerivedRelation(base, found, universe, rules)


def close_E_prefix(base, universe: Universe) -> DerivedRelation:
    return close(base, universe, ("ep",))


def close_transitive(base, universe: Universe) -> DerivedRelation:
    return close(base, universe, ("trans",))


def close_A_transitive(base, universe: Universe) -> DerivedRelation:
    return close(base, universe, ("atrans",))


def close_gen_E_prefix(base, universe: Universe) -> DerivedRelation:
    return close(base, universe, ("gep",))


def close_combination(base, universe: Universe) -> DerivedRelation:
    return close(base, universe, RULE_SETS["combination"])


def replay_step(rel: DerivedRelation, pair) -> bool:
    """Check that the recorded step for ``pair`` is a correct rule instance."""
    step = rel.derived[pair]
    a, b = pair
    prem = step.premises
    if any(q not in rel.derived for q in prem):
        return False
    if step.rule == "base":
        return pair in rel.base and not prem
    if step.rule == "ep":
        (x, y), = prem
        return strip_prefix(step.param, x) == a and strip_prefix(step.param, y) == b
    if step.rule == "trans":
        (p, q), (r, s) = prem
        return p == a and q == r and s == b
    if step.rule == "atrans":
        (p, q), (x, c) = prem
        return x == prepend(step.param, q) and a == prepend(step.param, p) and c == b
    if step.rule == "gep":
        w = step.param
        if not w or any(len(x) == 0 for x in w) or sum(len(x) == 1 for x in w) > 1:
            return False
        heads = {p for p, _ in prem}
        if heads != {prepend(x, a) for x in w}:
            return False
        tails = {prepend(v, b) for v in w}
        return all(q in tails for _, q in prem) and len(prem) == len(w)
    return False


def replay(rel: DerivedRelation, pair, _seen=None) -> bool:
    """Replay the whole derivation tree of ``pair``."""
    seen = set() if _seen is None else _seen
    if pair in seen:
        return True
    if not replay_step(rel, pair):
        return False
    seen.add(pair)
    return all(replay(rel, q, seen) for q in rel.derived[pair].premises)


@dataclass
class NecessaryReport:
    verdict: str
    pair: tuple | None
    relation: DerivedRelation

    @property
    def violated(self) -> bool:
        return self.verdict == "VIOLATED"

    @property
    def steps(self) -> int:
        return self.relation.tree_size(self.pair) if self.pair else 0

    def __str__(self):
        rel = self.relation
        scope = f"{len(rel.universe)} words, {len(rel.universe.prefixes)} prefixes"
        lines = [f"verdict: {self.verdict}", f"universe: {scope}", f"derived pairs: {len(rel)}"]
        if self.pair is not None:
            lines.append(f"reflexive pair derived in {self.steps} steps:")
            lines.append(rel.tree(self.pair, 1))
        else:
            lines.append("no reflexive pair derivable inside this universe; this is not a proof")
        return "\n".join(lines)


def check_necessary_condition(p: Preference, universe: Universe) -> NecessaryReport:
    words = sorted(universe.words)
    base = {(a, b) for a in words for b in words if p(a, b)}
    rel = close_combination(base, universe)
    bad = rel.reflexive()
    if not bad:
        return NecessaryReport("UNDETERMINED-ON-UNIVERSE", None, rel)
    pair = min(bad, key=rel.tree_size)
    return NecessaryReport("VIOLATED", pair, rel)


# experimental rules aimed at the three-branch example --------------------------


@dataclass
class SetRuleResult:
    light: dict
    heavy: dict

    def reflexive(self) -> list:
        return sorted(
            (pair for rel in (self.light, self.heavy) for pair in rel if pair[0] == pair[1]),
            key=lambda p: (len(p[0]), sorted(p[0])),
        )


def close_set_rules(base: Iterable[tuple], universe: Universe, set_bound: int = 3) -> SetRuleResult:
    """Mutually inductive relations ``l`` and ``ll`` over sets of words.

    Literal transcription of six rules: base into ``l``; from ``a l v.b`` and
    ``(uv)^w l c`` infer ``u.a ll {b, c}``; ``ll`` into ``l``; transitivity
    of ``ll``; padding ``A l B`` into ``A+C l B+C``; and unpadding ``A+C ll
    B+C`` into ``A l B``. Sets are capped at ``set_bound`` words and padding
    sets ``C`` are drawn from sets already occurring in ``ll``. Carries no
    soundness claim beyond the rules themselves.
    """
    words = universe.words
    single = lambda w: frozenset([w])  # noqa: E731
    light: dict = {}
    heavy: dict = {}
    for a, b in base:
        if a in words and b in words:
            light[(single(a), single(b))] = Step("base")
    pool = sorted(universe.prefixes)
    changed = True
    while changed:
        changed = False
        fresh_l: dict = {}
        fresh_h: dict = {}
        singles = [(next(iter(x)), next(iter(y))) for x, y in light if len(x) == 1 and len(y) == 1]
        for a, vb in singles:
            for v in pool:
                b = strip_prefix(v, vb)
                if b is None or b not in words:
                    continue
                for uv_w, c in singles:
                    for u in pool:
                        if power(tuple(u) + tuple(v)) != uv_w:
                            continue
                        ua = prepend(u, a)
                        if ua in words:
                            key = (single(ua), frozenset([b, c]))
                            fresh_h.setdefault(key, Step("pair", ((single(a), single(vb)), (single(uv_w), single(c))), u))
        for (x, y) in heavy:
            fresh_l.setdefault((x, y), Step("ll-to-l", ((x, y),)))
        for (x, y) in list(heavy):
            for (y2, z) in list(heavy):
                if y == y2:
                    fresh_h.setdefault((x, z), Step("ll-trans", ((x, y), (y, z))))
        pads = {s for pair in heavy for s in pair}
        for (x, y) in list(light):
            for c in pads:
                xc, yc = x | c, y | c
                if len(xc) <= set_bound and len(yc) <= set_bound:
                    fresh_l.setdefault((xc, yc), Step("pad", ((x, y),)))
        for (x, y) in list(heavy):
            common = x & y
            for k in range(1, len(common) + 1):
                for c in combinations(sorted(common), k):
                    c = frozenset(c)
                    if x - c and y - c:
                        fresh_l.setdefault((x - c, y - c), Step("unpad", ((x, y),)))
        for key, step in fresh_l.items():
            if key not in light:
                light[key] = step
                changed = True
        for key, step in fresh_h.items():
            if key not in heavy:
                heavy[key] = step
                changed = True
    return SetRuleResult(light, heavy)


# universe files ---------------------------------------------------------------


def parse_universe(text: str, prefix_bound: int = DEFAULT_PREFIX_BOUND) -> Universe:
    words, prefixes = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "word":
                words.append(parse_upword(rest))
            elif head == "prefix":
                prefixes.append(tokenize(rest))
            else:
                raise ParseError(f"expected 'word' or 'prefix', got {line!r}", lineno)
        except ValueError as err:
            if isinstance(err, ParseError) and err.line is not None:
                raise
            raise ParseError(str(err), lineno) from None
    if not prefixes:
        return Universe.around(words, prefix_bound)
    return Universe(words, prefixes)


def format_universe(u: Universe) -> str:
    lines = [f"word {format_upword(w)}" for w in sorted(u.words)]
    lines += [f"prefix {format_word(p)}" for p in sorted(u.prefixes, key=lambda p: (len(p), p))]
    return "\n".join(lines) + "\n"


def format_pairs(rel: DerivedRelation) -> str:
    return "".join(f"{_pair_str(p)}   [{rel.derived[p].describe()}]\n" for p in sorted(rel.derived))
