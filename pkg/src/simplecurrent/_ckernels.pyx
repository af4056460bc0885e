# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the brute-force checks in _pykernels."""

import numpy as np

ctypedef long long i64


cdef inline i64 _mod(i64 a, i64 m) nogil:
    a %= m
    return a + m if a < 0 else a


def bichar_table(q, add, M):
    cdef const i64[::1] qv = np.ascontiguousarray(q, dtype=np.int64)
    cdef const i64[:, ::1] av = np.ascontiguousarray(add, dtype=np.int64)
    cdef Py_ssize_t n = qv.shape[0], i, j
    cdef i64 m = M
    out = np.empty((n, n), dtype=np.int64)
    cdef i64[:, ::1] ov = out
    with nogil:
        for i in range(n):
            for j in range(n):
                ov[i, j] = _mod(qv[av[i, j]] - qv[i] - qv[j], m)
    return out


def form_defect(q, add, M, ys=None):
    cdef const i64[::1] qv = np.ascontiguousarray(q, dtype=np.int64)
    cdef const i64[:, ::1] av = np.ascontiguousarray(add, dtype=np.int64)
    cdef Py_ssize_t n = qv.shape[0], x, y, z, k
    cdef const i64[::1] yv = np.arange(n, dtype=np.int64) if ys is None else np.ascontiguousarray(ys, dtype=np.int64)
    cdef i64 m = M, v
    for k in range(yv.shape[0]):
        y = yv[k]
        for x in range(n):
            for z in range(n):
                v = (qv[av[av[x, y], z]] - qv[av[x, y]] - qv[av[x, z]] - qv[av[y, z]]
                     + qv[x] + qv[y] + qv[z])
                if _mod(v, m) != 0:
                    return (x, y, z)
    return None


def pentagon_defect(omega, add, M):
    cdef const i64[::1] w = np.ascontiguousarray(omega, dtype=np.int64).ravel()
    cdef const i64[:, ::1] av = np.ascontiguousarray(add, dtype=np.int64)
    cdef Py_ssize_t n = av.shape[0], nn = n * n, x, y, z, t
    cdef i64 m = M, v
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for t in range(n):
                    v = (w[y * nn + z * n + t] + w[x * nn + av[y, z] * n + t] + w[x * nn + y * n + z]
                         - w[x * nn + y * n + av[z, t]] - w[av[x, y] * nn + z * n + t])
                    if _mod(v, m) != 0:
                        return (x, y, z, t)
    return None


def hexagon_defect(omega, c, add, M):
    cdef const i64[::1] w = np.ascontiguousarray(omega, dtype=np.int64).ravel()
    cdef const i64[::1] cv = np.ascontiguousarray(c, dtype=np.int64).ravel()
    cdef const i64[:, ::1] av = np.ascontiguousarray(add, dtype=np.int64)
    cdef Py_ssize_t n = av.shape[0], nn = n * n, x, y, z
    cdef i64 m = M, v
    for x in range(n):
        for y in range(n):
            for z in range(n):
                v = (w[y * nn + z * n + x] + cv[x * n + av[y, z]] + w[x * nn + y * n + z]
                     - cv[x * n + z] - w[y * nn + x * n + z] - cv[x * n + y])
                if _mod(v, m) != 0:
                    return (1, x, y, z)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                v = (-w[z * nn + x * n + y] + cv[av[x, y] * n + z] - w[x * nn + y * n + z]
                     - cv[x * n + z] + w[x * nn + z * n + y] - cv[y * n + z])
                if _mod(v, m) != 0:
                    return (2, x, y, z)
    return None
