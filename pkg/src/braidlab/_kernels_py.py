"""Pure numpy fallback for the exact cyclotomic matrix product.

Both this module and the compiled ``_kernels`` extension expose
``cyclo_matmul(A, B, R)`` with identical semantics:

    A : (n, k, d) integer coefficients (power basis of Q(zeta_m), reduced)
    B : (k, p, d)
    R : (L, d) rows ``x**j mod Phi_m`` for j < L, with L >= 2*d - 1

and return the (n, p, d) coefficient array of A @ B reduced mod Phi_m.
Works for int64 and object (python int) arrays alike.
"""

import numpy as np


def cyclo_matmul(A, B, R):
    n, k, d = A.shape
    p = B.shape[1]
    dtype = object if (A.dtype == object or B.dtype == object) else np.int64
    full = np.zeros((n, p, 2 * d - 1), dtype=dtype)
    # only coefficient slices that carry data contribute
    a_live = [a for a in range(d) if A[:, :, a].any()]
    b_live = [b for b in range(d) if B[:, :, b].any()]
    for a in a_live:
        Aa = A[:, :, a]
        for b in b_live:
            full[:, :, a + b] += Aa @ B[:, :, b]
    red = R[: 2 * d - 1]
    if dtype is object:
        red = red.astype(object)
    return full @ red
