"""Strict weak orders on labels and property checkers for finite relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Hashable, Iterable, Mapping

from .errors import ParseError, UnrankedLabel


@dataclass(frozen=True)
class Check:
    """Outcome of a property check; falsy on failure.

    ``witness`` pins down the offending elements whenever ``ok`` is False.
    """

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"pass{': ' + self.detail if self.detail else ''}"
        return f"FAIL: {self.detail} witness={self.witness!r}"


PASS = Check(True)


@dataclass(frozen=True)
class LabelOrder:
    """Strict weak order on labels given by integer levels (higher is better)."""

    rank: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "rank", dict(self.rank))

    def __hash__(self):
        return hash(tuple(sorted(self.rank.items())))

    def level(self, label) -> int:
        try:
            return self.rank[label]
        except KeyError:
            raise UnrankedLabel(label) from None

    def less(self, a, b) -> bool:
        return self.level(a) < self.level(b)

    def equiv(self, a, b) -> bool:
        return self.level(a) == self.level(b)

    @property
    def labels(self) -> frozenset:
        return frozenset(self.rank)

    def relation(self, domain: Iterable | None = None) -> FiniteRelation:
        domain = frozenset(self.rank if domain is None else domain)
        pairs = {(a, b) for a in domain for b in domain if self.less(a, b)}
        return FiniteRelation(domain, pairs)

    @classmethod
    def from_sequence(cls, labels: Iterable[str]) -> LabelOrder:
        """Total order following the iteration order, least preferred first."""
        return cls({a: i for i, a in enumerate(labels)})


def parse_label_order(text: str) -> LabelOrder:
    rank = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "rank" or len(parts) != 3:
            raise ParseError(f"expected 'rank <label> <integer>', got {line!r}", lineno)
        try:
            rank[parts[1]] = int(parts[2])
        except ValueError:
            raise ParseError(f"rank of {parts[1]!r} is not an integer", lineno) from None
    return LabelOrder(rank)


def format_label_order(order: LabelOrder) -> str:
    items = sorted(order.rank.items(), key=lambda kv: (kv[1], kv[0]))
    return "".join(f"rank {label} {level}\n" for label, level in items)


@dataclass(frozen=True)
class FiniteRelation:
    domain: frozenset
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        domain = frozenset(self.domain)
        pairs = frozenset(self.pairs)
        stray = {x for p in pairs for x in p} - domain
        if stray:
            raise ValueError(f"pairs mention elements outside the domain: {sorted(map(repr, stray))}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], domain: Iterable = ()) -> FiniteRelation:
        pairs = frozenset(pairs)
        return cls(frozenset(domain) | {x for p in pairs for x in p}, pairs)

    @classmethod
    def restrict(cls, less, domain: Iterable) -> FiniteRelation:
        """Restriction of an arbitrary decidable relation to a finite domain."""
        domain = frozenset(domain)
        return cls(domain, {(a, b) for a in domain for b in domain if less(a, b)})

    def __call__(self, a, b) -> bool:
        return (a, b) in self.pairs

    def incomparable(self, a, b) -> bool:
        return (a, b) not in self.pairs and (b, a) not in self.pairs

    def elements(self) -> list:
        return _sorted(self.domain)


def _sorted(items: Iterable[Hashable]) -> list:
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


def check_transitive(r: FiniteRelation) -> Check:
    succ: dict = {}
    for a, b in r.pairs:
        succ.setdefault(a, set()).add(b)
    for a, b in _sorted(r.pairs):
        for c in _sorted(succ.get(b, ())):
            if (a, c) not in r.pairs:
                return Check(False, (a, b, c), f"{a!r}<{b!r} and {b!r}<{c!r} but not {a!r}<{c!r}")
    return PASS


def check_asymmetric(r: FiniteRelation) -> Check:
    for a, b in _sorted(r.pairs):
        if (b, a) in r.pairs:
            return Check(False, (a, b), f"{a!r}<{b!r} and {b!r}<{a!r}")
    return PASS


def check_irreflexive(r: FiniteRelation) -> Check:
    for a, b in _sorted(r.pairs):
        if a == b:
            return Check(False, a, f"{a!r}<{a!r}")
    return PASS


def check_negation_transitive(r: FiniteRelation) -> Check:
    xs = r.elements()
    for a, b, c in product(xs, repeat=3):
        if not r(a, b) and not r(b, c) and r(a, c):
            return Check(
                False, (a, b, c), f"not {a!r}<{b!r}, not {b!r}<{c!r}, yet {a!r}<{c!r}"
            )
    return PASS


def check_strict_weak_order(r: FiniteRelation) -> Check:
    asym = check_asymmetric(r)
    if not asym:
        return Check(False, asym.witness, "asymmetry: " + asym.detail)
    neg = check_negation_transitive(r)
    if not neg:
        return Check(False, neg.witness, "negation not transitive: " + neg.detail)
    return PASS


def check_incomparability_equivalence(r: FiniteRelation) -> Check:
    xs = r.elements()
    for a in xs:
        if not r.incomparable(a, a):
            return Check(False, (a,), f"{a!r} is comparable with itself")
    for a, b, c in product(xs, repeat=3):
        if r.incomparable(a, b) and r.incomparable(b, c) and not r.incomparable(a, c):
            return Check(False, (a, b, c), "incomparability not transitive")
    return PASS


def check_imitating(r: FiniteRelation) -> Check:
    """Lower and upper imitation: incomparable elements share predecessors and successors."""
    xs = r.elements()
    for a, b, c in product(xs, repeat=3):
        if not r.incomparable(a, b):
            continue
        if r(c, a) and not r(c, b):
            return Check(False, ("lower", a, b, c), f"{a!r}#{b!r}, {c!r}<{a!r} but not {c!r}<{b!r}")
        if r(a, c) and not r(b, c):
            return Check(False, ("upper", a, b, c), f"{a!r}#{b!r}, {a!r}<{c!r} but not {b!r}<{c!r}")
    return PASS


def check_short_cycles(r: FiniteRelation) -> Check:
    """No cycle a<b<a or a<b<c<a; elements need not be distinct, so a<a counts."""
    xs = r.elements()
    for a, b in _sorted(r.pairs):
        if (b, a) in r.pairs:
            return Check(False, (a, b), "cycle of length 2")
        for c in xs:
            if (b, c) in r.pairs and (c, a) in r.pairs:
                return Check(False, (a, b, c), "cycle of length 3")
    return PASS


@dataclass(frozen=True)
class SWOReport:
    strict_weak_order: Check
    transitive_with_equivalence: Check
    imitating_without_short_cycles: Check

    @property
    def verdicts(self) -> tuple[bool, bool, bool]:
        return (
            self.strict_weak_order.ok,
            self.transitive_with_equivalence.ok,
            self.imitating_without_short_cycles.ok,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1

    def __str__(self) -> str:
        return "\n".join(
            [
                f"(1) strict weak order:              {self.strict_weak_order}",
                f"(2) transitive, # an equivalence:   {self.transitive_with_equivalence}",
                f"(3) imitating, no 2- or 3-cycle:    {self.imitating_without_short_cycles}",
                f"agree: {self.agree}",
            ]
        )


def _both(first: Check, second: Check) -> Check:
    return first if not first else second


def check_swo_equivalences(r: FiniteRelation) -> SWOReport:
    return SWOReport(
        check_strict_weak_order(r),
        _both(check_transitive(r), check_incomparability_equivalence(r)),
        _both(check_imitating(r), check_short_cycles(r)),
    )
