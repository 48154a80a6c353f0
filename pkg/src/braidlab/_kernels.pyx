# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact cyclotomic matrix product (int64 path).

Same contract as ``braidlab._kernels_py.cyclo_matmul``; the caller guarantees
that no intermediate exceeds the int64 range.  Zero polynomial entries are
skipped, which matters because every operator in this package is very sparse.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def cyclo_matmul(A, B, R):
    if A.dtype != np.int64 or B.dtype != np.int64:
        from braidlab._kernels_py import cyclo_matmul as slow
        return slow(A, B, R)
    cdef const int64_t[:, :, ::1] a = np.ascontiguousarray(A)
    cdef const int64_t[:, :, ::1] b = np.ascontiguousarray(B)
    cdef const int64_t[:, ::1] red = np.ascontiguousarray(R[: 2 * A.shape[2] - 1], dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], d = a.shape[2]
    cdef Py_ssize_t p = b.shape[1]
    cdef Py_ssize_t L = 2 * d - 1
    out_arr = np.zeros((n, p, d), dtype=np.int64)
    cdef int64_t[:, :, ::1] out = out_arr
    buf_arr = np.zeros((p, L), dtype=np.int64)
    cdef int64_t[:, ::1] buf = buf_arr
    nza_arr = np.ascontiguousarray(np.asarray(A).any(axis=2), dtype=np.uint8)
    nzb_arr = np.ascontiguousarray(np.asarray(B).any(axis=2), dtype=np.uint8)
    cdef const uint8_t[:, ::1] nza = nza_arr
    cdef const uint8_t[:, ::1] nzb = nzb_arr
    row_arr = np.zeros(p, dtype=np.uint8)
    cdef uint8_t[::1] row_live = row_arr
    cdef Py_ssize_t i, j, l, x, y, c, e
    cdef int64_t av, bc
    with nogil:
        for i in range(n):
            for j in range(p):
                row_live[j] = 0
                for c in range(L):
                    buf[j, c] = 0
            for l in range(k):
                if not nza[i, l]:
                    continue
                for j in range(p):
                    if not nzb[l, j]:
                        continue
                    row_live[j] = 1
                    for x in range(d):
                        av = a[i, l, x]
                        if av == 0:
                            continue
                        for y in range(d):
                            buf[j, x + y] += av * b[l, j, y]
            for j in range(p):
                if not row_live[j]:
                    continue
                for c in range(L):
                    bc = buf[j, c]
                    if bc == 0:
                        continue
                    for e in range(d):
                        out[i, j, e] += bc * red[c, e]
    return out_arr
