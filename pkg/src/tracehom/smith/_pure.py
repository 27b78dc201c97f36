"""Sparse Smith elimination over Python integers."""

from __future__ import annotations


def _pick_pivot(rows, order):
    best = None
    for r in order:
        row = rows[r]
        if not row:
            continue
        for c in sorted(row):
            v = abs(row[c])
            if best is None or v < best[0]:
                best = (v, r, c)
                if v == 1:
                    return r, c
    return None if best is None else (best[1], best[2])


def eliminate(n_rows: int, n_cols: int, entries) -> list[int]:
    """Diagonal entries (absolute values, not yet a divisor chain) of a Smith reduction.

    ``entries`` is an iterable of ``((row, col), value)``.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries:
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
    order = sorted(rows)
    diag = []

    def axpy(dst, src, q):
        # rows[dst] -= q * rows[src]
        rd = rows[dst]
        for c, v in rows[src].items():
            nv = rd.get(c, 0) - q * v
            if nv:
                if c not in rd:
                    cols[c].add(dst)
                rd[c] = nv
            elif c in rd:
                del rd[c]
                cols[c].discard(dst)

    while True:
        piv = _pick_pivot(rows, order)
        if piv is None:
            break
        pr, pc = piv
        while True:
            p = rows[pr][pc]
            moved = False
            for i in sorted(cols[pc] - {pr}):
                q = rows[i][pc] // p
                axpy(i, pr, q)
                if pc in rows[i]:
                    pr, moved = i, True
                    break
            if moved:
                continue
            # column pc is now zero outside the pivot row, so column
            # operations only touch row pr
            row = rows[pr]
            for j in sorted(row):
                if j == pc:
                    continue
                q = row[j] // p
                nv = row[j] - q * p
                if nv:
                    row[j] = nv
                    pc, moved = j, True
                    break
                del row[j]
                cols[j].discard(pr)
            if not moved:
                break
        diag.append(abs(rows[pr][pc]))
        del rows[pr]
        cols.pop(pc)
        order.remove(pr)
    return diag
