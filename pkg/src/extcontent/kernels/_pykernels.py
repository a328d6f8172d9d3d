"""Pure-Python determinant kernels.

Reference backend, always available.  ``_ckernels`` implements the same four
functions; callers go through :mod:`extcontent.kernels`.

Rows are lists of Python ints (exact path) or floats (float path).  Subsets
are tuples of 0-based indices.
"""
from __future__ import annotations

PIVOT_FLOOR = 1e-300


def det_int(rows):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(rows)
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


def det_float(rows):
    """Determinant by Gaussian elimination with partial pivoting.

    A pivot below PIVOT_FLOOR in magnitude is a structural zero.
    """
    n = len(rows)
    if n == 0:
        return 1.0
    a = [[float(x) for x in r] for r in rows]
    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        piv = a[p][k]
        if abs(piv) < PIVOT_FLOOR:
            return 0.0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= piv
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k] / piv
            if f != 0.0:
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return det


def minor_dets_int(rows, row_subsets, col_subsets):
    """Grid of det(A[I, J]) for every I in row_subsets, J in col_subsets."""
    return [
        [det_int([[rows[i][j] for j in cols] for i in rsub]) for cols in col_subsets]
        for rsub in row_subsets
    ]


def minor_dets_float(rows, row_subsets, col_subsets):
    return [
        [det_float([[rows[i][j] for j in cols] for i in rsub]) for cols in col_subsets]
        for rsub in row_subsets
    ]
