"""Condition/Event nets and their asynchronous systems.

A marking is an ``int`` bitmask over places: bit ``i`` is set when place
``i`` holds.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .action import InputError, PartialActionSystem, ensure_valid
from .trace import EventAlphabet, IndependenceRelation

MAX_ALL_STATES_PLACES = 20


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class NetEvent:
    name: str
    pre: frozenset[int]
    post: frozenset[int]

    @property
    def neighbourhood(self) -> frozenset[int]:
        return self.pre | self.post


@dataclass(frozen=True)
class CENet:
    places: tuple[str, ...]
    events: tuple[NetEvent, ...]
    initial: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "initial", frozenset(self.initial))
        if len(set(self.places)) != len(self.places):
            raise ValueError("place names must be distinct")
        names = [e.name for e in self.events]
        if len(set(names)) != len(names):
            raise ValueError("event names must be distinct")
        n = len(self.places)
        for e in self.events:
            if any(not 0 <= p < n for p in e.pre | e.post):
                raise IndexError(f"event {e.name!r} references a missing place")
        if any(not 0 <= p < n for p in self.initial):
            raise IndexError("initial marking references a missing place")

    @property
    def width(self) -> int:
        return len(self.places)

    def mask(self, places) -> int:
        m = 0
        for p in places:
            m |= 1 << p
        return m

    def marking(self, names: Sequence[str]) -> int:
        return self.mask(self.places.index(n) for n in names)

    @property
    def initial_marking(self) -> int:
        return self.mask(self.initial)

    def render(self, s: int) -> str:
        """Marking as a 0/1 tuple in place declaration order, e.g. ``(1,0,1)``."""
        return "(" + ",".join("1" if s >> i & 1 else "0" for i in range(self.width)) + ")"

    def event_index(self, name: str) -> int:
        for i, e in enumerate(self.events):
            if e.name == name:
                return i
        raise KeyError(f"unknown event {name!r}")


def derive_independence(net: CENet) -> IndependenceRelation:
    pairs = []
    for i, a in enumerate(net.events):
        for j in range(i + 1, len(net.events)):
            if not a.neighbourhood & net.events[j].neighbourhood:
                pairs.append((i, j))
    return IndependenceRelation.from_pairs(pairs)


def enabled(net: CENet, s: int, e: int) -> bool:
    ev = net.events[e]
    pre, post = net.mask(ev.pre), net.mask(ev.post)
    return s & pre == pre and not s & post


def fire(net: CENet, s: int, e: int) -> int | None:
    if not enabled(net, s, e):
        return None
    ev = net.events[e]
    return (s & ~net.mask(ev.pre)) | net.mask(ev.post)


def reachable_markings(net: CENet, s0: int | None = None) -> list[int]:
    s0 = net.initial_marking if s0 is None else s0
    seen = {s0}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        for e in range(len(net.events)):
            t = fire(net, s, e)
            if t is not None and t not in seen:
                seen.add(t)
                queue.append(t)
    return list(seen)


def _order_key(net: CENet, s: int):
    return tuple(s >> i & 1 for i in range(net.width))


def compile_net(net: CENet, all_states: bool = False) -> PartialActionSystem:
    """Asynchronous system of the net over its reachable markings (or all of 2^B).

    States are ordered as 0/1 tuples in place declaration order.
    """
    if all_states:
        if net.width > MAX_ALL_STATES_PLACES:
            raise CapExceeded(f"--all-states is capped at {MAX_ALL_STATES_PLACES} places, net has {net.width}")
        markings = list(range(1 << net.width))
    else:
        markings = reachable_markings(net)
    markings.sort(key=lambda s: _order_key(net, s))
    index = {s: i for i, s in enumerate(markings)}
    table = {}
    for s in markings:
        for e in range(len(net.events)):
            t = fire(net, s, e)
            if t is not None:
                table[(index[s], e)] = index[t]
    sys = PartialActionSystem(
        EventAlphabet(tuple(e.name for e in net.events)),
        derive_independence(net),
        tuple(net.render(s) for s in markings),
        table,
        index[net.initial_marking],
    )
    ensure_valid(sys)
    return sys


def from_dict(doc: Mapping) -> CENet:
    if not isinstance(doc, Mapping):
        raise InputError("net document must be a JSON object")
    for key in ("places", "events"):
        if key not in doc:
            raise InputError(f"missing field {key!r}")
    places = tuple(doc["places"])
    if len(set(places)) != len(places) or not all(isinstance(p, str) and p for p in places):
        raise InputError("places: names must be distinct non-empty strings")
    index = {p: i for i, p in enumerate(places)}

    def resolve(names, where):
        if not isinstance(names, (list, tuple)):
            raise InputError(f"{where}: expected a list of place names")
        out = set()
        for k, name in enumerate(names):
            if name not in index:
                raise InputError(f"{where}[{k}]: unknown place {name!r}")
            out.add(index[name])
        return frozenset(out)

    events = []
    for i, ev in enumerate(doc["events"]):
        where = f"events[{i}]"
        if not isinstance(ev, Mapping) or not isinstance(ev.get("name"), str) or not ev["name"]:
            raise InputError(f"{where}: expected an object with a non-empty name")
        events.append(NetEvent(ev["name"], resolve(ev.get("pre", []), f"{where}.pre"),
                               resolve(ev.get("post", []), f"{where}.post")))
    if len({e.name for e in events}) != len(events):
        raise InputError("events: names must be distinct")
    return CENet(places, tuple(events), resolve(doc.get("initial", []), "initial"))


def to_dict(net: CENet) -> dict:
    def names(ps):
        return [net.places[p] for p in sorted(ps)]

    return {
        "places": list(net.places),
        "events": [{"name": e.name, "pre": names(e.pre), "post": names(e.post)} for e in net.events],
        "initial": names(net.initial),
    }


def load_net(path: str | Path) -> CENet:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)
