"""Cubical complex of a partial trace-monoid action and its homology.

Degree ``n`` is spanned by tuples ``(x, a_1, ..., a_n)``: a state and a
strictly increasing clique of pairwise independent events whose product
acts defined on ``x``. Coefficients are the constant integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .action import PartialActionSystem, apply_event, apply_word, ensure_valid, restrict
from .smith import SmithDecomposition, SparseIntMatrix, smith_normal_form
from .trace import enumerate_cliques


class ComplexError(RuntimeError):
    """A boundary referenced a tuple outside the basis (the input was never validated)."""


@dataclass(frozen=True, order=True)
class QTuple:
    x: int
    events: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.events)

    def label(self, sys: PartialActionSystem) -> str:
        parts = [sys.states[self.x], *(sys.alphabet.events[e] for e in self.events)]
        return parts[0] if not self.events else "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for t in self.torsion:
            if t <= 1:
                raise ValueError(f"torsion coefficients must exceed 1, got {t}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "HomologyGroup":
        text = text.strip()
        if text == "0":
            return cls(0)
        free, torsion = 0, []
        for part in text.split("⊕"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                torsion.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group component {part!r}")
        return cls(free, tuple(torsion))


@dataclass
class ChainComplex:
    """Graded bases and differentials; ``diffs[n]`` maps degree n to n-1 (``diffs[0]`` unused)."""

    system: PartialActionSystem
    bases: list[list[QTuple]]
    diffs: list[SparseIntMatrix | None] = field(default_factory=list)

    @property
    def top_degree(self) -> int:
        return len(self.bases) - 1

    def sizes(self) -> list[int]:
        return [len(b) for b in self.bases]

    def index(self, n: int) -> dict[QTuple, int]:
        return {q: i for i, q in enumerate(self.bases[n])}

    def differential(self, n: int) -> SparseIntMatrix:
        """Matrix of d_n, zero outside the computed range."""
        rows = len(self.bases[n - 1]) if 0 < n <= len(self.bases) else 0
        cols = len(self.bases[n]) if 0 <= n < len(self.bases) else 0
        if 1 <= n < len(self.diffs) and self.diffs[n] is not None:
            return self.diffs[n]
        return SparseIntMatrix(rows, cols)


def build_bases(sys: PartialActionSystem, scope=None, max_dim: int | None = None) -> ChainComplex:
    """Bases Q_0..Q_N of the complex over ``scope`` (default: every state).

    The system is restricted to ``scope`` first and must pass validation.
    Construction stops at the first empty degree or at ``max_dim``.
    """
    if scope is not None and set(scope) != set(range(sys.n_states)):
        sys = restrict(sys, scope)
    ensure_valid(sys)
    bases = [[QTuple(x, ()) for x in range(sys.n_states)]]
    n = 1
    while max_dim is None or n <= max_dim:
        cliques = enumerate_cliques(sys.alphabet, sys.rel, n)
        level = [QTuple(x, c) for x in range(sys.n_states) for c in cliques
                 if apply_word(sys, x, c) is not None]
        if not level:
            break
        bases.append(level)
        n += 1
    return ChainComplex(sys, bases, [None] * len(bases))


def build_differential(cx: ChainComplex, n: int) -> SparseIntMatrix:
    if not 1 <= n <= cx.top_degree:
        raise ValueError(f"degree {n} outside 1..{cx.top_degree}")
    sys = cx.system
    rows = cx.index(n - 1)
    acc: dict[tuple[int, int], int] = {}

    def add(q, col, coef):
        try:
            r = rows[q]
        except KeyError:
            raise ComplexError(f"boundary of degree {n} references {q}, which is not in the basis") from None
        acc[(r, col)] = acc.get((r, col), 0) + coef

    for col, q in enumerate(cx.bases[n]):
        for i, a in enumerate(q.events, start=1):
            face = q.events[:i - 1] + q.events[i:]
            sign = -1 if i % 2 else 1
            y = apply_event(sys, q.x, a)
            if y is None:
                raise ComplexError(f"{q} is in the basis but its event {a} is undefined")
            add(QTuple(y, face), col, sign)
            add(QTuple(q.x, face), col, -sign)
    m = SparseIntMatrix(len(cx.bases[n - 1]), len(cx.bases[n]), acc)
    cx.diffs[n] = m
    return m


def build_complex(sys: PartialActionSystem, scope=None, max_dim: int | None = None) -> ChainComplex:
    cx = build_bases(sys, scope, max_dim)
    for n in range(1, cx.top_degree + 1):
        build_differential(cx, n)
    return cx


def euler_characteristic(cx: ChainComplex) -> int:
    return sum((-1) ** n * size for n, size in enumerate(cx.sizes()))


def smith_decompositions(cx: ChainComplex, backend: str | None = None) -> list[SmithDecomposition]:
    """Smith data of d_0 .. d_{N+1}; the two ends are zero maps."""
    out = [SmithDecomposition(0, ())]
    for n in range(1, cx.top_degree + 1):
        if cx.diffs[n] is None:
            build_differential(cx, n)
        out.append(smith_normal_form(cx.diffs[n], backend))
    out.append(SmithDecomposition(0, ()))
    return out


def groups_from_smith(sizes: list[int], snf: list[SmithDecomposition]) -> list[HomologyGroup]:
    return [HomologyGroup(sizes[n] - snf[n].rank - snf[n + 1].rank, snf[n + 1].torsion())
            for n in range(len(sizes))]


def homology_groups(cx: ChainComplex, backend: str | None = None) -> list[HomologyGroup]:
    """H_0 .. H_N of the complex.

    When the bases were truncated by ``max_dim`` the top group is only an
    upper bound, so callers wanting H_k exactly build through degree k+1.
    """
    return groups_from_smith(cx.sizes(), smith_decompositions(cx, backend))


def homology(sys: PartialActionSystem, scope=None, max_dim: int | None = None) -> list[HomologyGroup]:
    """Homology groups of ``sys`` over ``scope``, degrees 0..max_dim (or all nonzero degrees)."""
    cx = build_complex(sys, scope, None if max_dim is None else max_dim + 1)
    groups = homology_groups(cx)
    return groups if max_dim is None else groups[:max_dim + 1]
