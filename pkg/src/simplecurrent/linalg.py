"""Integer linear algebra: Smith normal form and linear systems mod M."""

from __future__ import annotations

import numpy as np

__all__ = ["smith_normal_form", "solve_mod", "factorize"]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Return (U, D, V) with U*A*V == D, U and V unimodular.

    D is diagonal with nonnegative entries, each dividing the next.
    Matrices are lists of lists of Python ints.
    """
    D = [list(map(int, row)) for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
            rest = [(abs(D[i][t]), i, "r") for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), j, "c") for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


def factorize(n: int) -> dict[int, int]:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _solve_prime_power(A, b, p, e):
    """Solve A x = b mod p**e, free variables zero.  None if inconsistent."""
    mod = p ** e
    A = A % mod
    b = b % mod
    m, n = A.shape
    x = np.zeros(n, dtype=np.int64)
    if n == 0:
        return x if not np.any(b) else None
    pivots = []  # (row, col)
    used = np.zeros(m, dtype=bool)
    for c in range(n):
        cand = np.nonzero((~used) & (A[:, c] % p != 0))[0]
        if cand.size == 0:
            continue
        r = int(cand[0])
        inv = pow(int(A[r, c]), -1, mod)
        A[r] = (A[r] * inv) % mod
        b[r] = (b[r] * inv) % mod
        col = A[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            A[nz] = (A[nz] - np.outer(col[nz], A[r])) % mod
            b[nz] = (b[nz] - col[nz] * b[r]) % mod
        used[r] = True
        pivots.append((r, c))
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(n) if c not in pivot_cols]
    rest = np.nonzero(~used)[0]
    if rest.size:
        # remaining rows only involve free columns, all divisible by p
        if np.any(b[rest] % p):
            return None
        if e > 1:
            sub = _solve_prime_power(A[np.ix_(rest, free)] // p, b[rest] // p, p, e - 1)
            if sub is None:
                return None
            x[free] = sub
    for r, c in pivots:
        x[c] = (b[r] - (int(A[r, free] @ x[free]) if free else 0)) % mod
    return x


def solve_mod(A, b, M: int):
    """Solve the integer system A x = b modulo M.

    Returns one solution as an int64 vector in [0, M), or None when the
    system has no solution.  Works prime power by prime power and glues
    the pieces with the Chinese remainder theorem.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch")
    n = A.shape[1]
    x = np.zeros(n, dtype=np.int64)
    modulus = 1
    for p, e in factorize(M).items():
        q = p ** e
        part = _solve_prime_power(A.copy(), b.copy(), p, e)
        if part is None:
            return None
        # combine x mod modulus with part mod q
        t = ((part - x) % q) * pow(modulus, -1, q) % q
        x = x + modulus * t
        modulus *= q
    x %= M
    if np.any((A @ x - b) % M):
        return None
    return x
