"""Ultimately periodic words over a label alphabet.

A word ``prefix . period^omega`` is kept in canonical form: the period is
primitive and no letter can be rolled from the end of the prefix into the
period. Two words denote the same infinite sequence iff they compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

from .errors import EmptyPeriod, ParseError

Label = str


def _primitive_root(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True, order=True)
class UPWord:
    """Canonical ultimately periodic word.

    The constructor canonicalizes, so ``UPWord(("a",), ("b", "a"))`` and
    ``UPWord((), ("a", "b"))`` are the same value.
    """

    prefix: tuple
    period: tuple

    def __post_init__(self):
        prefix = tuple(self.prefix)
        period = tuple(self.period)
        if not period:
            raise EmptyPeriod("the period of an ultimately periodic word cannot be empty")
        period = _primitive_root(period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1:] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def __len__(self):
        raise TypeError("ultimately periodic words are infinite")

    def letter(self, n: int) -> Label:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.period[(n - len(self.prefix)) % len(self.period)]

    def take(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def drop(self, n: int) -> UPWord:
        """The word with its first ``n`` letters removed."""
        if n <= len(self.prefix):
            return UPWord(self.prefix[n:], self.period)
        shift = (n - len(self.prefix)) % len(self.period)
        return UPWord((), self.period[shift:] + self.period[:shift])

    def pretty(self) -> str:
        sep = "" if all(len(a) == 1 for a in self.prefix + self.period) else " "
        head = sep.join(self.prefix)
        body = sep.join(self.period)
        if len(self.period) > 1:
            body = f"({body})"
        return f"{head}{sep if head else ''}{body}^ω"

    def __str__(self) -> str:
        return format_upword(self)


def canonicalize(prefix: Iterable[Label], period: Iterable[Label]) -> UPWord:
    return UPWord(tuple(prefix), tuple(period))


def letter_at(w: UPWord, n: int) -> Label:
    return w.letter(n)


def prepend(u: Sequence[Label], w: UPWord) -> UPWord:
    return UPWord(tuple(u) + w.prefix, w.period)


def strip_prefix(u: Sequence[Label], w: UPWord) -> UPWord | None:
    """Return ``w'`` with ``prepend(u, w') == w``, or None when ``u`` is not a prefix."""
    u = tuple(u)
    if w.take(len(u)) != u:
        return None
    return w.drop(len(u))


def power(u: Sequence[Label]) -> UPWord:
    """``u^omega`` for a nonempty finite word ``u``."""
    return UPWord((), tuple(u))


def limit_set(w: UPWord) -> frozenset:
    return frozenset(w.period)


def element_set(w: UPWord) -> frozenset:
    return frozenset(w.prefix) | frozenset(w.period)


def horizon(a: UPWord, b: UPWord) -> int:
    """Number of positions after which a joint scan of ``a`` and ``b`` cycles."""
    return max(len(a.prefix), len(b.prefix)) + lcm(len(a.period), len(b.period))


def prefixes(w: UPWord, max_len: int) -> list[tuple]:
    """Nonempty finite prefixes of ``w`` up to ``max_len`` letters."""
    return [w.take(k) for k in range(1, max_len + 1)]


# text syntax: "u;v" with single-character labels, or whitespace-separated
# tokens ("0 1 ; 1", "; dl") as soon as the text contains any whitespace


_TOKEN = re.compile(r"\[([^\]]+)\]|(\S)")


def tokenize(text: str) -> tuple:
    """Split a finite word into labels.

    Text containing whitespace is split on whitespace; otherwise every
    character is a label and ``[abc]`` groups a multi-character label.
    ``-`` and the empty string denote the empty word.
    """
    text = text.strip()
    if not text or text in ("-", "ε"):
        return ()
    if any(c.isspace() for c in text):
        return tuple(t[1:-1] if t.startswith("[") and t.endswith("]") else t for t in text.split())
    return tuple(group or char for group, char in _TOKEN.findall(text))


def _spaced(labels: Sequence[Label]) -> bool:
    return any(len(a) != 1 or a in ";<-#[]" or a.isspace() for a in labels)


def format_word(u: Sequence[Label]) -> str:
    """Print a finite word so that :func:`tokenize` reads it back."""
    u = tuple(u)
    if not u:
        return "-"
    if not _spaced(u):
        return "".join(u)
    return " ".join(a if len(a) == 1 else f"[{a}]" for a in u)


def parse_upword(text: str) -> UPWord:
    if text.count(";") != 1:
        raise ParseError(f"expected exactly one ';' in word {text!r}")
    head, tail = text.split(";")
    if any(c.isspace() for c in text.strip()):
        prefix, period = tuple(head.split()), tuple(tail.split())
    else:
        prefix, period = tokenize(head), tokenize(tail)
    if not period:
        raise EmptyPeriod(f"empty period in word {text!r}")
    return UPWord(prefix, period)


def format_upword(w: UPWord) -> str:
    if _spaced(w.prefix + w.period):
        return f"{' '.join(w.prefix)} ; {' '.join(w.period)}".strip()
    return f"{''.join(w.prefix)};{''.join(w.period)}"
