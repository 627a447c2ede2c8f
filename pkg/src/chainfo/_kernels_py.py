"""Pure-numpy implementation of the hot transform kernels.

Drop-in fallback for the compiled `_kernels` extension; same signatures,
same branch structure (power series below x = max(0.5, l) where the closed
trig forms start to cancel, trig forms above).
"""

import numpy as np

BACKEND = "python"

_DFACT = [1.0, 3.0, 15.0, 105.0, 945.0]  # (2l+1)!! for l = 0..4


def sph_bessel_j_array(l, x):
    """j_l over an array of non-negative arguments."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < max(0.5, float(l))
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        term = xs**l / _DFACT[l]
        total = term.copy()
        for k in range(1, 19):
            term *= -0.5 * x2 / (k * (2 * l + 2 * k + 1))
            total += term
        out[small] = total
    big = ~small
    if np.any(big):
        xb = x[big]
        s, c = np.sin(xb), np.cos(xb)
        inv = 1.0 / xb
        if l == 0:
            v = s * inv
        elif l == 1:
            v = (s * inv - c) * inv
        elif l == 2:
            v = (3.0 * inv * inv - 1.0) * s * inv - 3.0 * c * inv * inv
        elif l == 3:
            inv2 = inv * inv
            v = (15.0 * inv2 - 6.0) * s * inv2 - (15.0 * inv2 - 1.0) * c * inv
        else:
            inv2 = inv * inv
            v = (105.0 * inv2 * inv2 - 45.0 * inv2 + 1.0) * s * inv - (
                105.0 * inv2 - 10.0
            ) * c * inv2
        out[big] = v
    return out


def transform_contract(l, p, r, f):
    """out[i] = sum_j f[j] * j_l(p[i] * r[j]).

    Chunked over p to bound the size of the outer-product argument matrix.
    """
    p = np.asarray(p, dtype=float)
    r = np.asarray(r, dtype=float)
    f = np.asarray(f, dtype=float)
    out = np.empty(p.shape[0])
    chunk = max(1, int(4e6 // max(r.shape[0], 1)))
    for i0 in range(0, p.shape[0], chunk):
        block = p[i0 : i0 + chunk, None] * r[None, :]
        jl = sph_bessel_j_array(l, block.ravel()).reshape(block.shape)
        out[i0 : i0 + chunk] = jl @ f
    return out
