"""Analysis reports and matrix dumps."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .complex import ChainComplex, HomologyGroup
from .smith import SparseIntMatrix

# frozen JSON field list; bump schema_version on any change
REPORT_FIELDS = (
    "schema_version",
    "kind",
    "scope",
    "scope_size",
    "basis_sizes",
    "ranks",
    "homology",
    "euler_characteristic",
    "timing_seconds",
)
SCHEMA_VERSION = 1


@dataclass
class AnalysisReport:
    kind: str  # "net" | "action"
    scope: str  # "reachable" | "all"
    scope_size: int
    basis_sizes: list[int]
    # ranks[n] = rank(d_n) for n = 0..N+1, both ends zero
    ranks: list[int]
    homology: list[HomologyGroup]
    euler_characteristic: int
    timing_seconds: float = 0.0
    schema_version: int = field(default=SCHEMA_VERSION)

    def check(self) -> None:
        """Raise if free ranks are not recomputable from sizes and ranks."""
        for n, g in enumerate(self.homology):
            expect = self.basis_sizes[n] - self.ranks[n] - self.ranks[n + 1]
            if g.free_rank != expect:
                raise ValueError(f"H_{n}: free rank {g.free_rank} != {expect}")
        chi = sum((-1) ** n * s for n, s in enumerate(self.basis_sizes))
        if chi != self.euler_characteristic:
            raise ValueError("Euler characteristic does not match basis sizes")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["homology"] = [{"degree": n, "free_rank": g.free_rank, "torsion": list(g.torsion), "group": str(g)}
                         for n, g in enumerate(self.homology)]
        return {k: d[k] for k in REPORT_FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        missing = set(REPORT_FIELDS) - d.keys()
        if missing:
            raise ValueError(f"report is missing fields {sorted(missing)}")
        if d["schema_version"] != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d['schema_version']}")
        groups = [HomologyGroup(h["free_rank"], tuple(h["torsion"]))
                  for h in sorted(d["homology"], key=lambda h: h["degree"])]
        return cls(d["kind"], d["scope"], d["scope_size"], list(d["basis_sizes"]), list(d["ranks"]),
                   groups, d["euler_characteristic"], d["timing_seconds"], d["schema_version"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = [
            f"input: {self.kind}  scope: {self.scope} ({self.scope_size} states)",
            "basis sizes: " + ", ".join(f"|Q_{n}|={s}" for n, s in enumerate(self.basis_sizes)),
            "ranks: " + ", ".join(f"rank d_{n}={r}" for n, r in enumerate(self.ranks[1:-1], start=1)),
            f"Euler characteristic: {self.euler_characteristic}",
        ]
        lines += [f"H_{n} = {g}" for n, g in enumerate(self.homology)]
        lines.append(f"time: {self.timing_seconds:.3f}s")
        return "\n".join(lines)


def matrix_text(m: SparseIntMatrix, row_labels: list[str], col_labels: list[str], title: str) -> str:
    dense = m.to_dense()
    out = [f"# {title}: {m.n_rows} x {m.n_cols}", "cols " + " ".join(col_labels)]
    for label, row in zip(row_labels, dense):
        out.append(label + " " + " ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


def matrix_json(m: SparseIntMatrix, row_labels: list[str], col_labels: list[str], degree: int) -> dict:
    return {
        "degree": degree,
        "n_rows": m.n_rows,
        "n_cols": m.n_cols,
        "row_labels": row_labels,
        "col_labels": col_labels,
        "entries": [list(t) for t in m.triplets()],
    }


def dump_matrices(cx: ChainComplex, directory: str | Path) -> list[Path]:
    """Write ``d<n>.txt`` and ``d<n>.json`` for every computed differential."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    labels = [[q.label(cx.system) for q in basis] for basis in cx.bases]
    written = []
    for n in range(1, cx.top_degree + 1):
        m = cx.differential(n)
        txt = directory / f"d{n}.txt"
        txt.write_text(matrix_text(m, labels[n - 1], labels[n], f"d_{n}"))
        js = directory / f"d{n}.json"
        js.write_text(json.dumps(matrix_json(m, labels[n - 1], labels[n], n), indent=1))
        written += [txt, js]
    return written


def read_matrix(path: str | Path) -> SparseIntMatrix:
    """Read a triplet matrix: JSON with n_rows/n_cols/entries, or text ``rows cols`` then ``r c v`` lines."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        return SparseIntMatrix.from_triplets(doc["n_rows"], doc["n_cols"], doc.get("entries", []))
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or len(lines[0]) != 2:
        raise ValueError(f"{path}: first line must be '<rows> <cols>'")
    n_rows, n_cols = map(int, lines[0])
    trip = []
    for k, ln in enumerate(lines[1:], start=2):
        if len(ln) != 3:
            raise ValueError(f"{path}: triplet line {k} must be '<row> <col> <value>'")
        trip.append(tuple(map(int, ln)))
    return SparseIntMatrix.from_triplets(n_rows, n_cols, trip)
