"""Vectorised numpy versions of the brute-force checks.

Every table holds exponents modulo M: a value v stands for exp(2 pi i v / M).
Elements are referred to by their index in the ambient group.
"""

import numpy as np

# work in slabs of roughly this many entries
_CHUNK = 1 << 20


def _first(mask, shape):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(int(idx[0]), shape))


def bichar_table(q, add, M):
    q = np.asarray(q, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    return (q[add] - q[:, None] - q[None, :]) % M


def form_defect(q, add, M, ys=None):
    """First (x, y, z) where the polarisation of q fails to be additive.

    The defect is q(x+y+z) - q(x+y) - q(x+z) - q(y+z) + q(x) + q(y) + q(z).
    ``ys`` restricts the middle variable, e.g. to a generating set.
    """
    q = np.asarray(q, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    n = q.size
    ys = range(n) if ys is None else [int(y) for y in ys]
    qxz = q[add]
    for y in ys:
        xy = add[:, y]
        val = (q[add[xy]] - q[xy][:, None] - qxz - q[add[y]][None, :]
               + q[:, None] + q[y] + q[None, :])
        bad = val % M != 0
        if bad.any():
            x, z = _first(bad, bad.shape)
            return (x, y, z)
    return None


def pentagon_defect(omega, add, M):
    """First (x, y, z, w) violating the pentagon identity, or None.

    omega is a flat table indexed by x*n*n + y*n + z.
    """
    add = np.asarray(add, dtype=np.int64)
    n = add.shape[0]
    w3 = np.asarray(omega, dtype=np.int64).reshape(n, n, n)
    step = max(1, _CHUNK // (n ** 3))
    ys = np.arange(n)
    for x0 in range(0, n, step):
        xs = np.arange(x0, min(n, x0 + step))
        X = xs[:, None, None, None]
        Y = ys[None, :, None, None]
        Z = ys[None, None, :, None]
        W = ys[None, None, None, :]
        lhs = w3[Y, Z, W] + w3[X, add[Y, Z], W] + w3[X, Y, Z]
        rhs = w3[X, Y, add[Z, W]] + w3[add[X, Y], Z, W]
        bad = (lhs - rhs) % M != 0
        if bad.any():
            x, y, z, w = _first(bad, bad.shape)
            return (int(xs[x]), y, z, w)
    return None


def hexagon_defect(omega, c, add, M):
    """First failure of either hexagon as (k, x, y, z) with k in {1, 2}."""
    add = np.asarray(add, dtype=np.int64)
    n = add.shape[0]
    w3 = np.asarray(omega, dtype=np.int64).reshape(n, n, n)
    c2 = np.asarray(c, dtype=np.int64).reshape(n, n)
    X = np.arange(n)[:, None, None]
    Y = np.arange(n)[None, :, None]
    Z = np.arange(n)[None, None, :]
    h1 = (w3[Y, Z, X] + c2[X, add[Y, Z]] + w3[X, Y, Z]
          - c2[X, Z] - w3[Y, X, Z] - c2[X, Y])
    bad = h1 % M != 0
    if bad.any():
        return (1,) + _first(bad, bad.shape)
    h2 = (-w3[Z, X, Y] + c2[add[X, Y], Z] - w3[X, Y, Z]
          - c2[X, Z] + w3[X, Z, Y] - c2[Y, Z])
    bad = h2 % M != 0
    if bad.any():
        return (2,) + _first(bad, bad.shape)
    return None
