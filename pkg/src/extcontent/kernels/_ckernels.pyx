# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled determinant kernels, same interface as ``_pykernels``.

Exact determinants take a machine-integer Bareiss path when a Hadamard-type
bound proves every intermediate value fits in 62 bits (products are formed in
128 bits).  Otherwise they fall back to Python integers.
"""
from libc.math cimport fabs
from libc.stdlib cimport malloc, free

from math import isqrt

cdef extern from *:
    ctypedef long long i128 "__int128"

FAST_LIMIT = 1 << 62
cdef double PIVOT_FLOOR = 1e-300


def _row_bounds(rows):
    # ceil(||row||_2), at least 1: any minor using these rows is bounded by the product.
    out = []
    for r in rows:
        s = 0
        for x in r:
            s += x * x
        b = isqrt(s)
        if b * b < s:
            b += 1
        out.append(b if b > 1 else 1)
    return out


def _fits_fast(bounds, int k):
    top = sorted(bounds, reverse=True)[:k]
    prod = 1
    for b in top:
        prod *= b
        if prod >= FAST_LIMIT:
            return False
    return True


cdef long long _bareiss_ll(long long* a, int n) nogil:
    # In-place on an n*n row-major buffer.  All entries stay below 2**62.
    cdef int k, i, j, p
    cdef long long sign = 1, prev = 1, akk, aik, tmp
    cdef i128 num
    if n == 0:
        return 1
    for k in range(n - 1):
        if a[k * n + k] == 0:
            p = -1
            for i in range(k + 1, n):
                if a[i * n + k] != 0:
                    p = i
                    break
            if p < 0:
                return 0
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = tmp
            sign = -sign
        akk = a[k * n + k]
        for i in range(k + 1, n):
            aik = a[i * n + k]
            for j in range(k + 1, n):
                num = <i128>a[i * n + j] * akk - <i128>aik * a[k * n + j]
                a[i * n + j] = <long long>(num / prev)
        prev = akk
    return sign * a[(n - 1) * n + (n - 1)]


def _bareiss_obj(rows):
    cdef Py_ssize_t n = len(rows), k, i, j
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_int(rows):
    cdef int n = len(rows), i, j
    cdef long long* buf
    cdef long long res
    if n == 0:
        return 1
    if not _fits_fast(_row_bounds(rows), n):
        return _bareiss_obj(rows)
    buf = <long long*>malloc(n * n * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            r = rows[i]
            for j in range(n):
                buf[i * n + j] = r[j]
        res = _bareiss_ll(buf, n)
    finally:
        free(buf)
    return res


cdef double _lu_det(double* a, int n) nogil:
    cdef int k, i, j, p
    cdef double det = 1.0, piv, f, best, tmp
    for k in range(n):
        p = k
        best = fabs(a[k * n + k])
        for i in range(k + 1, n):
            if fabs(a[i * n + k]) > best:
                best = fabs(a[i * n + k])
                p = i
        piv = a[p * n + k]
        if fabs(piv) < PIVOT_FLOOR:
            return 0.0
        if p != k:
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = tmp
            det = -det
        det *= piv
        for i in range(k + 1, n):
            f = a[i * n + k] / piv
            if f != 0.0:
                for j in range(k + 1, n):
                    a[i * n + j] -= f * a[k * n + j]
    return det


def det_float(rows):
    cdef int n = len(rows), i, j
    cdef double* buf
    cdef double res
    if n == 0:
        return 1.0
    buf = <double*>malloc(n * n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            r = rows[i]
            for j in range(n):
                buf[i * n + j] = r[j]
        res = _lu_det(buf, n)
    finally:
        free(buf)
    return res


def minor_dets_int(rows, row_subsets, col_subsets):
    cdef int nr = len(rows), nc, m, i, j, a, b
    if nr == 0 or not row_subsets or not col_subsets:
        return [[det_int([]) for _ in col_subsets] for _ in row_subsets]
    nc = len(rows[0])
    m = len(row_subsets[0])
    if m == 0 or not _fits_fast(_row_bounds(rows), m):
        return [
            [_bareiss_obj([[rows[i][j] for j in cols] for i in rsub]) for cols in col_subsets]
            for rsub in row_subsets
        ]
    cdef long long* full = <long long*>malloc(nr * nc * sizeof(long long))
    cdef long long* work = <long long*>malloc(m * m * sizeof(long long))
    cdef int* ri = <int*>malloc(m * sizeof(int))
    cdef int* ci = <int*>malloc(m * sizeof(int))
    if full == NULL or work == NULL or ri == NULL or ci == NULL:
        free(full); free(work); free(ri); free(ci)
        raise MemoryError()
    out = []
    try:
        for i in range(nr):
            r = rows[i]
            for j in range(nc):
                full[i * nc + j] = r[j]
        for rsub in row_subsets:
            for a in range(m):
                ri[a] = rsub[a]
            line = []
            for cols in col_subsets:
                for b in range(m):
                    ci[b] = cols[b]
                for a in range(m):
                    for b in range(m):
                        work[a * m + b] = full[ri[a] * nc + ci[b]]
                line.append(_bareiss_ll(work, m))
            out.append(line)
    finally:
        free(full); free(work); free(ri); free(ci)
    return out


def minor_dets_float(rows, row_subsets, col_subsets):
    cdef int nr = len(rows), nc, m, i, j, a, b
    if nr == 0 or not row_subsets or not col_subsets:
        return [[1.0 for _ in col_subsets] for _ in row_subsets]
    nc = len(rows[0])
    m = len(row_subsets[0])
    if m == 0:
        return [[1.0 for _ in col_subsets] for _ in row_subsets]
    cdef double* full = <double*>malloc(nr * nc * sizeof(double))
    cdef double* work = <double*>malloc(m * m * sizeof(double))
    cdef int* ri = <int*>malloc(m * sizeof(int))
    cdef int* ci = <int*>malloc(m * sizeof(int))
    if full == NULL or work == NULL or ri == NULL or ci == NULL:
        free(full); free(work); free(ri); free(ci)
        raise MemoryError()
    out = []
    try:
        for i in range(nr):
            r = rows[i]
            for j in range(nc):
                full[i * nc + j] = r[j]
        for rsub in row_subsets:
            for a in range(m):
                ri[a] = rsub[a]
            line = []
            for cols in col_subsets:
                for b in range(m):
                    ci[b] = cols[b]
                for a in range(m):
                    for b in range(m):
                        work[a * m + b] = full[ri[a] * nc + ci[b]]
                line.append(_lu_det(work, m))
            out.append(line)
    finally:
        free(full); free(work); free(ri); free(ci)
    return out
