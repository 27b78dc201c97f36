"""Exact Smith normal form of integer matrices (rank and elementary divisors).

Two elimination backends share one contract:

``compiled``
    Sparse int64 kernel built with Cython, used whenever the extension is
    importable. Any int64 overflow transparently reruns the matrix on the
    Python path.
``python``
    Sparse elimination over Python integers. Always available.

Set ``TRACEHOM_PURE=1`` to disable the compiled kernel.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import _pure

try:
    if os.environ.get("TRACEHOM_PURE"):
        raise ImportError("compiled kernel disabled by TRACEHOM_PURE")
    from . import _kernel
except ImportError:
    _kernel = None

BACKEND = "compiled" if _kernel is not None else "python"


@dataclass(frozen=True)
class SparseIntMatrix:
    n_rows: int
    n_cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
                raise IndexError(f"entry ({r}, {c}) outside a {self.n_rows}x{self.n_cols} matrix")
            if v:
                clean[(r, c)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "SparseIntMatrix":
        rows = [list(r) for r in rows]
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise ValueError("ragged dense matrix")
        return cls(len(rows), n_cols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_triplets(cls, n_rows: int, n_cols: int, triplets: Iterable[Sequence[int]]) -> "SparseIntMatrix":
        acc: dict[tuple[int, int], int] = {}
        for r, c, v in triplets:
            acc[(r, c)] = acc.get((r, c), 0) + v
        return cls(n_rows, n_cols, acc)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def triplets(self) -> list[tuple[int, int, int]]:
        return sorted((r, c, v) for (r, c), v in self.entries.items())

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.n_cols, self.n_rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.n_rows}x{self.n_cols} @ {other.n_rows}x{other.n_cols}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        acc: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseIntMatrix(self.n_rows, other.n_cols, acc)

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class SmithDecomposition:
    rank: int
    divisors: tuple[int, ...]

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)


def divisor_chain(diagonal: Iterable[int]) -> tuple[int, ...]:
    """Turn any nonzero diagonal into the equivalent chain d1 | d2 | ... ."""
    d = sorted(abs(x) for x in diagonal if x)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            if d[j] % d[i]:
                g = math.gcd(d[i], d[j])
                d[i], d[j] = g, d[i] // g * d[j]
    return tuple(d)


def _diagonal(m: SparseIntMatrix, backend: str | None):
    backend = backend or BACKEND
    if backend not in ("compiled", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "compiled":
        if _kernel is None:
            raise RuntimeError("compiled Smith kernel is not available")
        try:
            return _kernel.eliminate(m.n_rows, m.n_cols, m.entries.items())
        except OverflowError:
            pass
    return _pure.eliminate(m.n_rows, m.n_cols, m.entries.items())


def smith_normal_form(m: SparseIntMatrix, backend: str | None = None) -> SmithDecomposition:
    """Rank and elementary divisors of ``m``.

    >>> smith_normal_form(SparseIntMatrix.from_dense([[2, 4], [6, 8]]))
    SmithDecomposition(rank=2, divisors=(2, 4))
    """
    if not m.entries:
        return SmithDecomposition(0, ())
    divs = divisor_chain(_diagonal(m, backend))
    return SmithDecomposition(len(divs), divs)


def rank(m: SparseIntMatrix, backend: str | None = None) -> int:
    return smith_normal_form(m, backend).rank


def available_backends() -> list[str]:
    return ["compiled", "python"] if _kernel is not None else ["python"]


__all__ = [
    "BACKEND",
    "SmithDecomposition",
    "SparseIntMatrix",
    "available_backends",
    "divisor_chain",
    "rank",
    "smith_normal_form",
]
