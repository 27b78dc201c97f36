# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Sparse int64 Smith elimination.

Rows are kept as column-sorted arrays; each column keeps a list of rows that
may hold an entry there (stale members are tolerated and skipped). Raises
OverflowError as soon as an intermediate value leaves the int64 range;
callers fall back to the arbitrary-precision path.
"""

from libc.stdlib cimport calloc, malloc, realloc, free
from libc.limits cimport LLONG_MIN

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow" (long long a, long long b, long long *res) nogil
    bint sub_ovf "__builtin_sub_overflow" (long long a, long long b, long long *res) nogil

cdef enum:
    OK = 0
    OVERFLOW = 1
    NOMEM = 2


cdef struct Row:
    Py_ssize_t n
    Py_ssize_t cap
    Py_ssize_t *col
    long long *val


cdef struct Members:
    Py_ssize_t n
    Py_ssize_t cap
    Py_ssize_t *idx


cdef inline long long floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int row_reserve(Row *r, Py_ssize_t cap) nogil:
    cdef Py_ssize_t *c
    cdef long long *v
    if cap <= r.cap:
        return OK
    c = <Py_ssize_t *> realloc(r.col, cap * sizeof(Py_ssize_t))
    if c == NULL:
        return NOMEM
    r.col = c
    v = <long long *> realloc(r.val, cap * sizeof(long long))
    if v == NULL:
        return NOMEM
    r.val = v
    r.cap = cap
    return OK


cdef int members_add(Members *m, Py_ssize_t i) nogil:
    cdef Py_ssize_t *p
    cdef Py_ssize_t cap
    if m.n == m.cap:
        cap = 4 if m.cap == 0 else 2 * m.cap
        p = <Py_ssize_t *> realloc(m.idx, cap * sizeof(Py_ssize_t))
        if p == NULL:
            return NOMEM
        m.idx = p
        m.cap = cap
    m.idx[m.n] = i
    m.n += 1
    return OK


cdef Py_ssize_t row_find(Row *r, Py_ssize_t c) nogil:
    cdef Py_ssize_t lo = 0, hi = r.n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if r.col[mid] < c:
            lo = mid + 1
        else:
            hi = mid
    if lo < r.n and r.col[lo] == c:
        return lo
    return -1


cdef int row_axpy(Row *dst, Py_ssize_t dst_index, Row *src, long long q, Row *tmp, Members *cols) nogil:
    # dst -= q * src, merging into tmp then swapping buffers
    cdef Py_ssize_t i = 0, j = 0, k = 0, c
    cdef long long t, v
    cdef Py_ssize_t *swap_c
    cdef long long *swap_v
    cdef Py_ssize_t swap_cap
    if row_reserve(tmp, dst.n + src.n + 1) != OK:
        return NOMEM
    while i < dst.n or j < src.n:
        if j >= src.n or (i < dst.n and dst.col[i] < src.col[j]):
            tmp.col[k] = dst.col[i]
            tmp.val[k] = dst.val[i]
            i += 1
            k += 1
        elif i >= dst.n or src.col[j] < dst.col[i]:
            c = src.col[j]
            if mul_ovf(q, src.val[j], &t) or sub_ovf(0, t, &v):
                return OVERFLOW
            if v != 0:
                tmp.col[k] = c
                tmp.val[k] = v
                k += 1
                if members_add(&cols[c], dst_index) != OK:
                    return NOMEM
            j += 1
        else:
            if mul_ovf(q, src.val[j], &t) or sub_ovf(dst.val[i], t, &v):
                return OVERFLOW
            if v != 0:
                tmp.col[k] = dst.col[i]
                tmp.val[k] = v
                k += 1
            i += 1
            j += 1
    swap_c = dst.col
    swap_v = dst.val
    swap_cap = dst.cap
    dst.col = tmp.col
    dst.val = tmp.val
    dst.cap = tmp.cap
    dst.n = k
    tmp.col = swap_c
    tmp.val = swap_v
    tmp.cap = swap_cap
    tmp.n = 0
    return OK


cdef int eliminate_sparse(Row *rows, Py_ssize_t m, Members *cols, long long *diag,
                          Py_ssize_t *n_diag) nogil:
    cdef Row tmp
    cdef Py_ssize_t lo = 0, r, k, pr, pc, pos, i, w
    cdef long long best, v, p, q, t
    cdef bint moved
    cdef int status = OK
    tmp.n = 0
    tmp.cap = 0
    tmp.col = NULL
    tmp.val = NULL
    n_diag[0] = 0

    while True:
        # least magnitude pivot, ties by row then column; rows that are
        # empty never regain entries, so the scan start only moves forward
        while lo < m and rows[lo].n == 0:
            lo += 1
        best = 0
        pr = -1
        pc = -1
        r = lo
        while r < m:
            for k in range(rows[r].n):
                v = rows[r].val[k]
                if v == LLONG_MIN:
                    status = OVERFLOW
                    break
                if v < 0:
                    v = -v
                if best == 0 or v < best:
                    best = v
                    pr = r
                    pc = rows[r].col[k]
                    if v == 1:
                        break
            if status != OK or best == 1:
                break
            r += 1
        if status != OK or pr < 0:
            break

        while True:
            pos = row_find(&rows[pr], pc)
            p = rows[pr].val[pos]
            moved = False
            k = 0
            while k < cols[pc].n:
                i = cols[pc].idx[k]
                k += 1
                if i == pr:
                    continue
                pos = row_find(&rows[i], pc)
                if pos < 0:
                    continue
                q = floordiv(rows[i].val[pos], p)
                status = row_axpy(&rows[i], i, &rows[pr], q, &tmp, cols)
                if status != OK:
                    break
                if row_find(&rows[i], pc) >= 0:
                    pr = i
                    moved = True
                    break
            if status != OK:
                break
            if moved:
                continue
            # column pc is zero off the pivot row: column operations touch row pr only
            w = 0
            for k in range(rows[pr].n):
                v = rows[pr].val[k]
                if rows[pr].col[k] != pc and not moved:
                    q = floordiv(v, p)
                    if mul_ovf(q, p, &t) or sub_ovf(v, t, &v):
                        status = OVERFLOW
                        break
                    if v != 0:
                        pc = rows[pr].col[k]
                        moved = True
                if v != 0:
                    rows[pr].col[w] = rows[pr].col[k]
                    rows[pr].val[w] = v
                    w += 1
            if status != OK:
                break
            rows[pr].n = w
            if not moved:
                break
        if status != OK:
            break

        pos = row_find(&rows[pr], pc)
        v = rows[pr].val[pos]
        if v == LLONG_MIN:
            status = OVERFLOW
            break
        diag[n_diag[0]] = -v if v < 0 else v
        n_diag[0] += 1
        rows[pr].n = 0
        cols[pc].n = 0

    free(tmp.col)
    free(tmp.val)
    return status


def eliminate(Py_ssize_t n_rows, Py_ssize_t n_cols, entries):
    """Same contract as the pure-Python ``eliminate``; values must fit int64."""
    cdef Row *rows
    cdef Members *cols
    cdef long long *diag
    cdef Py_ssize_t n_diag = 0, i, r, c, k = min(n_rows, n_cols)
    cdef long long v
    cdef int status = OK
    if n_rows == 0 or n_cols == 0:
        return []
    by_row = {}
    for (r_, c_), v_ in entries:
        if v_:
            by_row.setdefault(r_, []).append((c_, v_))
    rows = <Row *> calloc(n_rows, sizeof(Row))
    cols = <Members *> calloc(n_cols, sizeof(Members))
    diag = <long long *> malloc((k + 1) * sizeof(long long))
    try:
        if rows == NULL or cols == NULL or diag == NULL:
            raise MemoryError()
        for r_, items in by_row.items():
            items.sort()
            r = r_
            if row_reserve(&rows[r], len(items)) != OK:
                raise MemoryError()
            for c_, v_ in items:
                c = c_
                v = v_  # raises OverflowError beyond int64
                rows[r].col[rows[r].n] = c
                rows[r].val[rows[r].n] = v
                rows[r].n += 1
                if members_add(&cols[c], r) != OK:
                    raise MemoryError()
        with nogil:
            status = eliminate_sparse(rows, n_rows, cols, diag, &n_diag)
        if status == OVERFLOW:
            raise OverflowError("int64 overflow during elimination")
        if status == NOMEM:
            raise MemoryError()
        return [diag[i] for i in range(n_diag)]
    finally:
        if rows != NULL:
            for i in range(n_rows):
                free(rows[i].col)
                free(rows[i].val)
        if cols != NULL:
            for i in range(n_cols):
                free(cols[i].idx)
        free(rows)
        free(cols)
        free(diag)
