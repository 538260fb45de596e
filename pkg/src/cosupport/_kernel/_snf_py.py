"""Pure-Python Smith normal form over Z/n.

Reference implementation of the kernel; ``_snf.pyx`` mirrors it line for
line with C integers.  Matrices are lists of row lists of ints.
"""

from math import gcd


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b), for a, b >= 0.

    When a divides b the answer is (a, 1, 0), so elimination never swaps.
    """
    if a and b % a == 0:
        return a, 1, 0
    s, next_s = 1, 0
    t, next_t = 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
    return a, s, t


def unit_for(a, n):
    """A unit u of Z/n with u*a == gcd(a, n) (mod n)."""
    g = gcd(a, n)
    m = n // g
    if m == 1:
        return 1
    u = pow(a // g, -1, m)
    while gcd(u, n) != 1:
        u += m
    return u % n


def snf_mod(A, nrows, ncols, n):
    """Smith normal form of an nrows x ncols matrix over Z/n.

    Returns ``(U, Uinv, V, d)`` with ``U*A*V == diag(d)`` modulo n.  Each
    ``d[t]`` is a divisor of n (the value n stands for a zero pivot) and
    ``d[0] | d[1] | ...``.  ``len(d) == min(nrows, ncols)``.
    """
    A = [[x % n for x in row] for row in A]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    Ui = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    r = min(nrows, ncols)
    d = [n] * r

    for t in range(r):
        best, bi, bj = n, -1, -1
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                a = row[j]
                if a:
                    g = gcd(a, n)
                    if g < best:
                        best, bi, bj = g, i, j
                        if g == 1:
                            break
            if best == 1:
                break
        if bi < 0:
            break
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            U[t], U[bi] = U[bi], U[t]
            for row in Ui:
                row[t], row[bi] = row[bi], row[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            for row in V:
                row[t], row[bj] = row[bj], row[t]

        while True:
            for i in range(t + 1, nrows):
                b = A[i][t]
                if not b:
                    continue
                a = A[t][t]
                g, s, w = xgcd(a, b)
                x, y = a // g, b // g
                rt, ri = A[t], A[i]
                A[t] = [(s * p + w * q) % n for p, q in zip(rt, ri)]
                A[i] = [(x * q - y * p) % n for p, q in zip(rt, ri)]
                rt, ri = U[t], U[i]
                U[t] = [(s * p + w * q) % n for p, q in zip(rt, ri)]
                U[i] = [(x * q - y * p) % n for p, q in zip(rt, ri)]
                for row in Ui:
                    p, q = row[t], row[i]
                    row[t] = (x * p + y * q) % n
                    row[i] = (s * q - w * p) % n
            for j in range(t + 1, ncols):
                b = A[t][j]
                if not b:
                    continue
                a = A[t][t]
                g, s, w = xgcd(a, b)
                x, y = a // g, b // g
                for row in A:
                    p, q = row[t], row[j]
                    row[t] = (s * p + w * q) % n
                    row[j] = (x * q - y * p) % n
                for row in V:
                    p, q = row[t], row[j]
                    row[t] = (s * p + w * q) % n
                    row[j] = (x * q - y * p) % n
            if any(A[i][t] for i in range(t + 1, nrows)):
                continue
            p = gcd(A[t][t], n)
            bad = -1
            for i in range(t + 1, nrows):
                if any(A[i][j] % p for j in range(t + 1, ncols)):
                    bad = i
                    break
            if bad < 0:
                break
            # pull a non-multiple into the pivot row
            A[t] = [(p_ + q_) % n for p_, q_ in zip(A[t], A[bad])]
            U[t] = [(p_ + q_) % n for p_, q_ in zip(U[t], U[bad])]
            for row in Ui:
                row[bad] = (row[bad] - row[t]) % n

        a = A[t][t]
        g = gcd(a, n)
        if g == n:
            break
        u = unit_for(a, n)
        if u != 1:
            uinv = pow(u, -1, n)
            A[t] = [(u * x) % n for x in A[t]]
            U[t] = [(u * x) % n for x in U[t]]
            for row in Ui:
                row[t] = (row[t] * uinv) % n
        d[t] = g
    return U, Ui, V, d
