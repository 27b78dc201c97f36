"""Event alphabets, independence relations and trace identities.

Events are interned to integer indices; the index is also the position in
the total order used for normal forms and clique enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]


@dataclass(frozen=True)
class EventAlphabet:
    events: tuple[str, ...]

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for name in events:
            if not isinstance(name, str) or not name:
                raise ValueError(f"event names must be non-empty strings, got {name!r}")
        if len(set(events)) != len(events):
            dup = sorted({e for e in events if events.count(e) > 1})
            raise ValueError(f"duplicate event names: {dup}")

    def __len__(self):
        return len(self.events)

    def index(self, name: str) -> int:
        try:
            return self.events.index(name)
        except ValueError:
            raise KeyError(f"unknown event {name!r}") from None

    def name(self, i: int) -> str:
        self.check(i)
        return self.events[i]

    def check(self, i: int) -> None:
        if not 0 <= i < len(self.events):
            raise IndexError(f"event index {i} out of range for {len(self.events)} events")

    def word(self, names: Iterable[str]) -> Word:
        return tuple(self.index(n) for n in names)

    def render(self, w: Sequence[int]) -> str:
        return " ".join(self.events[i] for i in w)


@dataclass(frozen=True)
class IndependenceRelation:
    """Irreflexive symmetric relation, stored as unordered pairs ``(i, j)`` with ``i < j``."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for a, b in self.pairs:
            if a == b:
                raise ValueError(f"independence must be irreflexive, got ({a}, {a})")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "pairs", frozenset(norm))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "IndependenceRelation":
        return cls(frozenset(tuple(p) for p in pairs))

    @classmethod
    def from_names(cls, alphabet: EventAlphabet, pairs: Iterable[Sequence[str]]) -> "IndependenceRelation":
        out = []
        for p in pairs:
            if len(p) != 2:
                raise ValueError(f"independence entries must be pairs, got {p!r}")
            out.append((alphabet.index(p[0]), alphabet.index(p[1])))
        return cls.from_pairs(out)

    def neighbours(self, a: int) -> set[int]:
        return {y if x == a else x for x, y in self.pairs if a in (x, y)}

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)


def is_independent(rel: IndependenceRelation, a: int, b: int, alphabet: EventAlphabet | None = None) -> bool:
    if alphabet is not None:
        alphabet.check(a)
        alphabet.check(b)
    elif a < 0 or b < 0:
        raise IndexError(f"negative event index in ({a}, {b})")
    if a == b:
        return False
    return (min(a, b), max(a, b)) in rel.pairs


def trace_normal_form(alphabet: EventAlphabet, rel: IndependenceRelation, w: Sequence[int]) -> Word:
    """Lexicographically least word equivalent to ``w`` under adjacent independent swaps.

    A letter can be brought to the front exactly when it is independent of
    every letter before it, so the least word is built greedily.
    """
    for i in w:
        alphabet.check(i)
    rest = list(w)
    out = []
    while rest:
        best = None
        for pos, letter in enumerate(rest):
            if best is not None and letter >= rest[best]:
                continue
            if all(is_independent(rel, prev, letter) for prev in rest[:pos]):
                best = pos
        out.append(rest.pop(best))
    return tuple(out)


def trace_equivalent(alphabet: EventAlphabet, rel: IndependenceRelation, v: Sequence[int], w: Sequence[int]) -> bool:
    return trace_normal_form(alphabet, rel, v) == trace_normal_form(alphabet, rel, w)


def enumerate_cliques(alphabet: EventAlphabet, rel: IndependenceRelation, n: int) -> list[Word]:
    """All strictly increasing ``n``-tuples of pairwise independent events, in lexicographic order."""
    if n < 0:
        raise ValueError("clique size must be non-negative")
    k = len(alphabet)
    later = [sorted(j for j in rel.neighbours(i) if j > i) for i in range(k)]
    out: list[Word] = []

    def extend(prefix: list[int], candidates: list[int]):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for pos, c in enumerate(candidates):
            if len(prefix) + len(candidates) - pos < n:
                break
            nxt = [d for d in candidates[pos + 1:] if d in later_sets[c]]
            prefix.append(c)
            extend(prefix, nxt)
            prefix.pop()

    later_sets = [set(s) for s in later]
    extend([], list(range(k)))
    return out


def max_clique_dimension(alphabet: EventAlphabet, rel: IndependenceRelation) -> int:
    n = 0
    while enumerate_cliques(alphabet, rel, n + 1):
        n += 1
    return n
