"""Finite partial actions of a trace monoid on a set of states."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .trace import EventAlphabet, IndependenceRelation, Word


class InputError(ValueError):
    """Malformed input document."""


@dataclass(frozen=True)
class Violation:
    state: int
    a: int
    b: int
    ab: int | None
    ba: int | None

    def describe(self, sys: "PartialActionSystem") -> str:
        def show(s):
            return "undefined" if s is None else sys.states[s]

        ea, eb = sys.alphabet.events[self.a], sys.alphabet.events[self.b]
        return (f"state {sys.states[self.state]!r}, events ({ea}, {eb}): "
                f"{ea}{eb} -> {show(self.ab)} but {eb}{ea} -> {show(self.ba)}")


class ValidationError(ValueError):
    def __init__(self, sys: "PartialActionSystem", violations: list[Violation]):
        self.violations = violations
        lines = [v.describe(sys) for v in violations]
        super().__init__("commutation violated:\n  " + "\n  ".join(lines))


@dataclass(frozen=True)
class PartialActionSystem:
    alphabet: EventAlphabet
    rel: IndependenceRelation
    states: tuple[str, ...]
    # (state, event) -> state; a missing key means the action is undefined
    table: Mapping[tuple[int, int], int] = field(default_factory=dict)
    initial: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if len(set(self.states)) != len(self.states):
            raise ValueError("state names must be distinct")
        n, k = len(self.states), len(self.alphabet)
        for a, b in self.rel.pairs:
            self.alphabet.check(a)
            self.alphabet.check(b)
        for (x, e), y in self.table.items():
            if not (0 <= x < n and 0 <= y < n):
                raise IndexError(f"transition ({x}, {e}) -> {y} references a missing state")
            if not 0 <= e < k:
                raise IndexError(f"transition ({x}, {e}) -> {y} references a missing event")
        if self.initial is not None and not 0 <= self.initial < n:
            raise IndexError(f"initial state {self.initial} out of range")

    @property
    def n_states(self) -> int:
        return len(self.states)

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise KeyError(f"unknown state {name!r}") from None

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((x, e, y) for (x, e), y in self.table.items())


def apply_event(sys: PartialActionSystem, x: int | None, e: int) -> int | None:
    sys.alphabet.check(e)
    if x is None:
        return None
    if not 0 <= x < sys.n_states:
        raise IndexError(f"state index {x} out of range")
    return sys.table.get((x, e))


def apply_word(sys: PartialActionSystem, x: int | None, w: Sequence[int]) -> int | None:
    for e in w:
        x = apply_event(sys, x, e)
    if x is not None and not 0 <= x < sys.n_states:
        raise IndexError(f"state index {x} out of range")
    return x


def validate(sys: PartialActionSystem) -> list[Violation]:
    """Every ``(x, a, b)`` with ``a, b`` independent where ``x.ab != x.ba``."""
    out = []
    for a, b in sys.rel.sorted_pairs():
        for x in range(sys.n_states):
            ab = apply_word(sys, x, (a, b))
            ba = apply_word(sys, x, (b, a))
            if ab != ba:
                out.append(Violation(x, a, b, ab, ba))
    out.sort(key=lambda v: (v.state, v.a, v.b))
    return out


def ensure_valid(sys: PartialActionSystem) -> None:
    violations = validate(sys)
    if violations:
        raise ValidationError(sys, violations)


def reachable_states(sys: PartialActionSystem, s0: int) -> set[int]:
    if not 0 <= s0 < sys.n_states:
        raise IndexError(f"state index {s0} out of range")
    seen = {s0}
    queue = deque([s0])
    while queue:
        x = queue.popleft()
        for e in range(len(sys.alphabet)):
            y = sys.table.get((x, e))
            if y is not None and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def connected_components(sys: PartialActionSystem, scope: Iterable[int] | None = None) -> list[list[int]]:
    """Weakly connected components of the transition graph, each sorted, ordered by least member."""
    nodes = set(range(sys.n_states)) if scope is None else set(scope)
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (x, _e), y in sys.table.items():
        if x in nodes and y in nodes:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in sorted(nodes):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def restrict(sys: PartialActionSystem, scope: Iterable[int]) -> PartialActionSystem:
    """Sub-system on ``scope``; transitions leaving the scope become undefined.

    States are renumbered in increasing order of their old index.
    """
    keep = sorted(set(scope))
    new = {old: i for i, old in enumerate(keep)}
    table = {(new[x], e): new[y] for (x, e), y in sys.table.items() if x in new and y in new}
    initial = new.get(sys.initial) if sys.initial is not None else None
    return PartialActionSystem(sys.alphabet, sys.rel, tuple(sys.states[i] for i in keep), table, initial)


def permute_events(sys: PartialActionSystem, order: Sequence[int]) -> PartialActionSystem:
    """Same system with events redeclared in ``order`` (a permutation of old indices)."""
    if sorted(order) != list(range(len(sys.alphabet))):
        raise ValueError("order must be a permutation of the event indices")
    new = {old: i for i, old in enumerate(order)}
    alphabet = EventAlphabet(tuple(sys.alphabet.events[i] for i in order))
    rel = IndependenceRelation.from_pairs((new[a], new[b]) for a, b in sys.rel.pairs)
    table = {(x, new[e]): y for (x, e), y in sys.table.items()}
    return PartialActionSystem(alphabet, rel, sys.states, table, sys.initial)


def from_dict(doc: Mapping) -> PartialActionSystem:
    """Build a system from the JSON action document."""
    if not isinstance(doc, Mapping):
        raise InputError("action document must be a JSON object")
    for key in ("events", "states"):
        if key not in doc:
            raise InputError(f"missing field {key!r}")
    try:
        alphabet = EventAlphabet(tuple(doc["events"]))
    except (TypeError, ValueError) as exc:
        raise InputError(f"events: {exc}") from None
    states = tuple(doc["states"])
    if len(set(states)) != len(states) or not all(isinstance(s, str) and s for s in states):
        raise InputError("states: names must be distinct non-empty strings")
    index = {s: i for i, s in enumerate(states)}

    def state(name, where):
        if name not in index:
            raise InputError(f"{where}: unknown state {name!r}")
        return index[name]

    def event(name, where):
        try:
            return alphabet.index(name)
        except (KeyError, TypeError):
            raise InputError(f"{where}: unknown event {name!r}") from None

    pairs = []
    for i, p in enumerate(doc.get("independence", [])):
        where = f"independence[{i}]"
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise InputError(f"{where}: expected a pair of event names")
        a, b = event(p[0], where), event(p[1], where)
        if a == b:
            raise InputError(f"{where}: an event cannot be independent of itself")
        pairs.append((a, b))
    table: dict[tuple[int, int], int] = {}
    for i, t in enumerate(doc.get("transitions", [])):
        where = f"transitions[{i}]"
        if not isinstance(t, Mapping) or not {"from", "event", "to"} <= t.keys():
            raise InputError(f"{where}: expected an object with from, event, to")
        key = (state(t["from"], where), event(t["event"], where))
        if key in table:
            raise InputError(f"{where}: duplicate transition for ({t['from']}, {t['event']})")
        table[key] = state(t["to"], where)
    initial = doc.get("initial")
    if initial is not None:
        initial = state(initial, "initial")
    return PartialActionSystem(alphabet, IndependenceRelation.from_pairs(pairs), states, table, initial)


def to_dict(sys: PartialActionSystem) -> dict:
    ev, st = sys.alphabet.events, sys.states
    doc = {
        "events": list(ev),
        "independence": [[ev[a], ev[b]] for a, b in sys.rel.sorted_pairs()],
        "states": list(st),
        "transitions": [{"from": st[x], "event": ev[e], "to": st[y]} for x, e, y in sys.edges()],
    }
    if sys.initial is not None:
        doc["initial"] = st[sys.initial]
    return doc


def load_action(path: str | Path) -> PartialActionSystem:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def word_of(sys: PartialActionSystem, names: Iterable[str]) -> Word:
    return sys.alphabet.word(names)
