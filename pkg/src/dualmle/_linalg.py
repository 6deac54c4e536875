"""Dense exact linear algebra over the rationals (lists of lists of mpq)."""

from __future__ import annotations

from gmpy2 import mpq


def zeros(r, c):
    return [[mpq(0)] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = mpq(1)
    return m


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    Bt = list(zip(*B))
    out = []
    for i in range(n):
        row = A[i]
        nz = [(t, row[t]) for t in range(k) if row[t]]
        out.append([sum((a * Bt[j][t] for t, a in nz), mpq(0)) for j in range(m)])
    return out


def matadd(A, B, alpha=1):
    return [[a + alpha * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A, c):
    return [[c * a for a in row] for row in A]


def rref(A):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        pr = M[r]
        nzc = [j for j in range(cols) if pr[j]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                Mi = M[i]
                for j in nzc:
                    Mi[j] -= f * pr[j]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A):
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols=None):
    """Basis of {x : A x = 0} as a list of vectors."""
    if not A:
        return [[mpq(1) if i == j else mpq(0) for i in range(ncols)] for j in range(ncols)]
    cols = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [mpq(0)] * cols
        v[f] = mpq(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def generalized_kernel(M):
    """Basis of the kernel of M^D (D = size), found by repeated squaring."""
    n = len(M)
    if n == 0:
        return []
    P = M
    r = rank(P)
    while True:
        if r == 0:
            break
        Q = matmul(P, P)
        r2 = rank(Q)
        if r2 == r:
            break
        P, r = Q, r2
    return nullspace(P, n)


def charpoly(M):
    """Characteristic polynomial det(x I - M), coefficients highest degree first.

    Hessenberg reduction followed by the standard recurrence, all exact.
    """
    n = len(M)
    if n == 0:
        return [mpq(1)]
    H = [list(r) for r in M]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = 1 / H[m][m - 1]
        for i in range(m + 1, n):
            f = H[i][m - 1] * inv
            if f:
                Hi, Hm = H[i], H[m]
                for j in range(n):
                    Hi[j] -= f * Hm[j]
                for row in H:
                    row[m] += f * row[i]
    # p_k = characteristic polynomial of leading k x k block (lists, low degree first)
    polys = [[mpq(1)]]
    for k in range(1, n + 1):
        # x * p_{k-1} - h_kk * p_{k-1}
        prev = polys[k - 1]
        cur = [mpq(0)] + list(prev)
        hkk = H[k - 1][k - 1]
        for i, a in enumerate(prev):
            cur[i] -= hkk * a
        prod = mpq(1)
        for i in range(1, k):
            prod *= H[k - i][k - i - 1]
            if not prod:
                break
            coef = prod * H[k - i - 1][k - 1]
            if coef:
                for j, a in enumerate(polys[k - i - 1]):
                    cur[j] -= coef * a
        polys.append(cur)
    return list(reversed(polys[n]))
