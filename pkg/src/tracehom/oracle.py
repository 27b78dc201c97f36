"""Brute-force homology of the classifying space of the action category.

Objects are states, morphisms ``x -> y`` are traces ``mu`` with
``x . mu = y``. For acyclic systems the category is finite and its nerve
can be enumerated outright. This is a test instrument: it shares nothing
with the cubical complex except the Smith module.
"""

from __future__ import annotations

from .action import PartialActionSystem, apply_event, restrict
from .complex import HomologyGroup, groups_from_smith
from .smith import SmithDecomposition, SparseIntMatrix, smith_normal_form
from .trace import Word, trace_normal_form

MAX_SIMPLICES = 200_000


class CyclicSystem(ValueError):
    """The transition graph has a cycle, so the category has infinitely many morphisms."""


class OracleCapExceeded(RuntimeError):
    pass


def find_cycle(sys: PartialActionSystem) -> list[int] | None:
    succ = {x: sorted({y for (s, _e), y in sys.table.items() if s == x}) for x in range(sys.n_states)}
    colour = [0] * sys.n_states
    stack_path: list[int] = []

    def visit(x):
        colour[x] = 1
        stack_path.append(x)
        for y in succ[x]:
            if colour[y] == 1:
                return stack_path[stack_path.index(y):] + [y]
            if colour[y] == 0:
                found = visit(y)
                if found:
                    return found
        colour[x] = 2
        stack_path.pop()
        return None

    for x in range(sys.n_states):
        if colour[x] == 0:
            found = visit(x)
            if found:
                return found
    return None


def enumerate_morphisms(sys: PartialActionSystem, scope=None) -> dict[tuple[int, int], set[Word]]:
    """Map ``(x, y)`` to the set of trace normal forms ``mu`` with ``x . mu = y``."""
    if scope is not None and set(scope) != set(range(sys.n_states)):
        sys = restrict(sys, scope)
    cycle = find_cycle(sys)
    if cycle is not None:
        raise CyclicSystem("transition graph has a cycle through states "
                           + " -> ".join(sys.states[s] for s in cycle))
    table: dict[tuple[int, int], set[Word]] = {}
    k = len(sys.alphabet)
    for x in range(sys.n_states):
        # depth-first over words; acyclicity bounds their length by the state count
        stack: list[tuple[int, Word]] = [(x, ())]
        while stack:
            y, w = stack.pop()
            table.setdefault((x, y), set()).add(trace_normal_form(sys.alphabet, sys.rel, w))
            for e in range(k):
                z = apply_event(sys, y, e)
                if z is not None:
                    stack.append((z, w + (e,)))
    return table


def nerve_homology(sys: PartialActionSystem, scope=None, max_dim: int | None = None) -> list[HomologyGroup]:
    """Homology of the nerve, degrees 0..top (or 0..max_dim).

    Simplices are chains of composable non-identity morphisms, stored as
    ``(x0, mu_1, ..., mu_n)``.
    """
    if scope is not None and set(scope) != set(range(sys.n_states)):
        sys = restrict(sys, scope)
    morphisms = enumerate_morphisms(sys)
    out_of: dict[int, list[tuple[Word, int]]] = {}
    for (x, y), traces in morphisms.items():
        for mu in traces:
            if mu:
                out_of.setdefault(x, []).append((mu, y))
    for arrows in out_of.values():
        arrows.sort()

    levels: list[list[tuple]] = [[(x,) for x in range(sys.n_states)]]
    frontier = [(x, x, ()) for x in range(sys.n_states)]
    total = len(levels[0])
    limit = None if max_dim is None else max_dim + 1
    while frontier and (limit is None or len(levels) <= limit):
        nxt = []
        for x0, end, mus in frontier:
            for mu, y in out_of.get(end, ()):
                nxt.append((x0, y, mus + (mu,)))
        if not nxt:
            break
        total += len(nxt)
        if total > MAX_SIMPLICES:
            raise OracleCapExceeded(f"nerve exceeds {MAX_SIMPLICES} simplices")
        levels.append([(x0, *mus) for x0, _y, mus in nxt])
        frontier = nxt

    def compose(u: Word, v: Word) -> Word:
        return trace_normal_form(sys.alphabet, sys.rel, u + v)

    def faces(simplex):
        x0, mus = simplex[0], list(simplex[1:])
        n = len(mus)
        out = []
        for i in range(n + 1):
            if i == 0:
                out.append(((_act(sys, x0, mus[0]), *mus[1:]), 1))
            elif i == n:
                out.append(((x0, *mus[:-1]), (-1) ** n))
            else:
                merged = compose(mus[i - 1], mus[i])
                if not merged:
                    continue  # degenerate face
                out.append(((x0, *mus[:i - 1], merged, *mus[i + 1:]), (-1) ** i))
        return out

    diffs = [SparseIntMatrix(0, len(levels[0]))]
    for n in range(1, len(levels)):
        rows = {s: i for i, s in enumerate(levels[n - 1])}
        acc: dict[tuple[int, int], int] = {}
        for col, s in enumerate(levels[n]):
            for face, sign in faces(s):
                r = rows[face]
                acc[(r, col)] = acc.get((r, col), 0) + sign
        diffs.append(SparseIntMatrix(len(levels[n - 1]), len(levels[n]), acc))

    snf = [smith_normal_form(d) for d in diffs] + [SmithDecomposition(0, ())]
    groups = groups_from_smith([len(lv) for lv in levels], snf)
    return groups if max_dim is None else groups[:max_dim + 1]


def _act(sys, x, mu):
    for e in mu:
        x = apply_event(sys, x, e)
    return x


def same_homology(a: list[HomologyGroup], b: list[HomologyGroup]) -> bool:
    """Compare two homology sequences, treating missing top degrees as zero."""
    n = max(len(a), len(b))
    zero = HomologyGroup(0)
    return all((a[i] if i < len(a) else zero) == (b[i] if i < len(b) else zero) for i in range(n))
