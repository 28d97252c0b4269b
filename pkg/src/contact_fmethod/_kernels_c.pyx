# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``; same signatures and results."""
from math import gcd

BACKEND = "cython"

DEF MAXV = 64


cdef object _binom(long n, long k):
    cdef long j
    cdef object r = 1
    if k < 0 or k > n:
        return 0
    for j in range(k):
        r = r * (n - j) // (j + 1)
    return r


def mono_mul(tuple k1, tuple k2, int nv):
    cdef long base[2 * MAXV]
    cdef int cvars[MAXV]
    cdef int lim[MAXV]
    cdef int cur[MAXV]
    cdef int nc = 0
    cdef int v, t, pos
    cdef long d, a
    if nv > MAXV:
        raise ValueError("too many variables")
    for v in range(nv):
        base[v] = <long>k1[v] + <long>k2[v]
        base[nv + v] = <long>k1[nv + v] + <long>k2[nv + v]
        d = k1[nv + v]
        a = k2[v]
        if d and a:
            cvars[nc] = v
            lim[nc] = d if d < a else a
            cur[nc] = 0
            nc += 1
    if nc == 0:
        return [(tuple([base[t] for t in range(2 * nv)]), 1)]
    # per-variable factor tables: C(d,j) * a!/(a-j)!
    tables = []
    for t in range(nc):
        v = cvars[t]
        d = k1[nv + v]
        a = k2[v]
        row = []
        fall = 1
        for pos in range(lim[t] + 1):
            row.append(_binom(d, pos) * fall)
            fall = fall * (a - pos)
        tables.append(row)
    out = []
    cdef list key
    cdef object coef
    while True:
        key = [base[t] for t in range(2 * nv)]
        coef = 1
        for t in range(nc):
            v = cvars[t]
            key[v] -= cur[t]
            key[nv + v] -= cur[t]
            coef = coef * tables[t][cur[t]]
        out.append((tuple(key), coef))
        pos = 0
        while pos < nc:
            cur[pos] += 1
            if cur[pos] <= lim[pos]:
                break
            cur[pos] = 0
            pos += 1
        if pos == nc:
            break
    return out


def mono_apply(tuple k, tuple b, int nv):
    cdef int v
    cdef long d, e, j
    cdef object coef = 1
    cdef long f
    out = [0] * nv
    for v in range(nv):
        d = k[nv + v]
        e = b[v]
        if e < d:
            return None
        if d:
            f = 1
            for j in range(d):
                f *= e - j
            coef = coef * f
        out[v] = <long>k[v] + e - d
    return tuple(out), coef


cdef object _content(dict row):
    cdef object g = 0
    for a, b in row.values():
        g = gcd(g, a, b)
        if g == 1:
            return 1
    return g


def ff_reduce_row(dict row, dict pivots):
    cdef long last = -1
    cdef long col, c
    cdef dict new, prow
    row = dict(row)
    while row:
        col = -1
        for c in row:
            if c > last and c in pivots and (col < 0 or c < col):
                col = c
        if col < 0:
            break
        prow = pivots[col]
        pa, pb = prow[col]
        fa, fb = row[col]
        new = {}
        for c, ab in row.items():
            a, b = ab
            na = pa * a - pb * b
            nb = pa * b + pb * a
            if na or nb:
                new[c] = (na, nb)
        for c, ab in prow.items():
            a, b = ab
            sa = fa * a - fb * b
            sb = fa * b + fb * a
            if c in new:
                na, nb = new[c]
                na = na - sa
                nb = nb - sb
                if na or nb:
                    new[c] = (na, nb)
                else:
                    del new[c]
            elif sa or sb:
                new[c] = (-sa, -sb)
        new.pop(col, None)
        if new:
            g = _content(new)
            if g > 1:
                new = {c: (ab[0] // g, ab[1] // g) for c, ab in new.items()}
        row = new
        last = col
    return row
