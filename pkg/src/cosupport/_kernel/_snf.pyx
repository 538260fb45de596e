# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form over Z/n (same contract as ``_snf_py``)."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline i64 _md(i64 a, i64 n) nogil:
    a %= n
    if a < 0:
        a += n
    return a


cdef void _xgcd(i64 a, i64 b, i64* g, i64* s, i64* t) nogil:
    cdef i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1, q, tmp
    if a and b % a == 0:
        g[0] = a
        s[0] = 1
        t[0] = 0
        return
    while b:
        q = a // b
        tmp = a - q * b
        a = b
        b = tmp
        tmp = s0 - q * s1
        s0 = s1
        s1 = tmp
        tmp = t0 - q * t1
        t0 = t1
        t1 = tmp
    g[0] = a
    s[0] = s0
    t[0] = t0


cdef i64 _inverse(i64 a, i64 m) nogil:
    cdef i64 g, s, t
    _xgcd(_md(a, m), m, &g, &s, &t)
    return _md(s, m)


cdef i64 _unit_for(i64 a, i64 n) nogil:
    cdef i64 g = _gcd(a, n)
    cdef i64 m = n // g
    cdef i64 u
    if m == 1:
        return 1
    u = _inverse(a // g, m)
    while _gcd(u, n) != 1:
        u += m
    return u % n


def snf_mod(A, int nrows, int ncols, long long n):
    cdef i64* a = <i64*>malloc(max(1, nrows * ncols) * sizeof(i64))
    cdef i64* u = <i64*>malloc(max(1, nrows * nrows) * sizeof(i64))
    cdef i64* ui = <i64*>malloc(max(1, nrows * nrows) * sizeof(i64))
    cdef i64* v = <i64*>malloc(max(1, ncols * ncols) * sizeof(i64))
    cdef int r = min(nrows, ncols)
    cdef int i, j, k, t, bi, bj, bad
    cdef i64 best, g, s, w, x, y, p, q, piv, unit, uinv
    cdef bint found
    d = [n] * r
    try:
        for i in range(nrows):
            row = A[i]
            for j in range(ncols):
                a[i * ncols + j] = _md(<i64>row[j], n)
        for i in range(nrows):
            for j in range(nrows):
                u[i * nrows + j] = 1 if i == j else 0
                ui[i * nrows + j] = 1 if i == j else 0
        for i in range(ncols):
            for j in range(ncols):
                v[i * ncols + j] = 1 if i == j else 0

        for t in range(r):
            best = n
            bi = -1
            bj = -1
            for i in range(t, nrows):
                for j in range(t, ncols):
                    p = a[i * ncols + j]
                    if p:
                        g = _gcd(p, n)
                        if g < best:
                            best = g
                            bi = i
                            bj = j
                            if g == 1:
                                break
                if best == 1:
                    break
            if bi < 0:
                break
            if bi != t:
                for k in range(ncols):
                    p = a[t * ncols + k]; a[t * ncols + k] = a[bi * ncols + k]; a[bi * ncols + k] = p
                for k in range(nrows):
                    p = u[t * nrows + k]; u[t * nrows + k] = u[bi * nrows + k]; u[bi * nrows + k] = p
                    p = ui[k * nrows + t]; ui[k * nrows + t] = ui[k * nrows + bi]; ui[k * nrows + bi] = p
            if bj != t:
                for k in range(nrows):
                    p = a[k * ncols + t]; a[k * ncols + t] = a[k * ncols + bj]; a[k * ncols + bj] = p
                for k in range(ncols):
                    p = v[k * ncols + t]; v[k * ncols + t] = v[k * ncols + bj]; v[k * ncols + bj] = p

            while True:
                for i in range(t + 1, nrows):
                    q = a[i * ncols + t]
                    if not q:
                        continue
                    piv = a[t * ncols + t]
                    _xgcd(piv, q, &g, &s, &w)
                    x = piv // g
                    y = q // g
                    for k in range(ncols):
                        p = a[t * ncols + k]; q = a[i * ncols + k]
                        a[t * ncols + k] = _md(s * p + w * q, n)
                        a[i * ncols + k] = _md(x * q - y * p, n)
                    for k in range(nrows):
                        p = u[t * nrows + k]; q = u[i * nrows + k]
                        u[t * nrows + k] = _md(s * p + w * q, n)
                        u[i * nrows + k] = _md(x * q - y * p, n)
                        p = ui[k * nrows + t]; q = ui[k * nrows + i]
                        ui[k * nrows + t] = _md(x * p + y * q, n)
                        ui[k * nrows + i] = _md(s * q - w * p, n)
                for j in range(t + 1, ncols):
                    q = a[t * ncols + j]
                    if not q:
                        continue
                    piv = a[t * ncols + t]
                    _xgcd(piv, q, &g, &s, &w)
                    x = piv // g
                    y = q // g
                    for k in range(nrows):
                        p = a[k * ncols + t]; q = a[k * ncols + j]
                        a[k * ncols + t] = _md(s * p + w * q, n)
                        a[k * ncols + j] = _md(x * q - y * p, n)
                    for k in range(ncols):
                        p = v[k * ncols + t]; q = v[k * ncols + j]
                        v[k * ncols + t] = _md(s * p + w * q, n)
                        v[k * ncols + j] = _md(x * q - y * p, n)
                found = False
                for i in range(t + 1, nrows):
                    if a[i * ncols + t]:
                        found = True
                        break
                if found:
                    continue
                p = _gcd(a[t * ncols + t], n)
                bad = -1
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if a[i * ncols + j] % p:
                            bad = i
                            break
                    if bad >= 0:
                        break
                if bad < 0:
                    break
                for k in range(ncols):
                    a[t * ncols + k] = _md(a[t * ncols + k] + a[bad * ncols + k], n)
                for k in range(nrows):
                    u[t * nrows + k] = _md(u[t * nrows + k] + u[bad * nrows + k], n)
                    ui[k * nrows + bad] = _md(ui[k * nrows + bad] - ui[k * nrows + t], n)

            piv = a[t * ncols + t]
            g = _gcd(piv, n)
            if g == n:
                break
            unit = _unit_for(piv, n)
            if unit != 1:
                uinv = _inverse(unit, n)
                for k in range(ncols):
                    a[t * ncols + k] = _md(unit * a[t * ncols + k], n)
                for k in range(nrows):
                    u[t * nrows + k] = _md(unit * u[t * nrows + k], n)
                    ui[k * nrows + t] = _md(ui[k * nrows + t] * uinv, n)
            d[t] = g

        U = [[u[i * nrows + j] for j in range(nrows)] for i in range(nrows)]
        Ui = [[ui[i * nrows + j] for j in range(nrows)] for i in range(nrows)]
        V = [[v[i * ncols + j] for j in range(ncols)] for i in range(ncols)]
        return U, Ui, V, d
    finally:
        free(a)
        free(u)
        free(ui)
        free(v)
