"""Pure-Python hot kernels.

Keys are flat exponent tuples ``(mult_0..mult_{nv-1}, deriv_0..deriv_{nv-1})``.
Gaussian integers in elimination rows are ``(re, im)`` pairs of ints.
The compiled module ``_kernels_c`` exports exactly the same functions.
"""
from functools import lru_cache
from itertools import product
from math import comb, gcd

BACKEND = "python"


@lru_cache(maxsize=None)
def _contraction_factors(d, a):
    # d-fold derivative past x^a: sum_j C(d,j) a!/(a-j)! x^(a-j) D^(d-j)
    out = []
    fall = 1
    for j in range(min(d, a) + 1):
        out.append((j, comb(d, j) * fall))
        fall *= a - j
    return tuple(out)


def mono_mul(k1, k2, nv):
    """Normal-ordered product of two Weyl monomials as ``[(key, int_coef), ...]``."""
    base = [k1[v] + k2[v] for v in range(nv)] + [k1[nv + v] + k2[nv + v] for v in range(nv)]
    contracted = []
    for v in range(nv):
        if k1[nv + v] and k2[v]:
            contracted.append(v)
    if not contracted:
        return [(tuple(base), 1)]
    tables = [_contraction_factors(k1[nv + v], k2[v]) for v in contracted]
    out = []
    for choice in product(*tables):
        key = list(base)
        coef = 1
        for v, (j, f) in zip(contracted, choice):
            key[v] -= j
            key[nv + v] -= j
            coef *= f
        out.append((tuple(key), coef))
    return out


def mono_apply(k, b, nv):
    """Apply monomial operator ``k`` to the polynomial monomial ``b``; None if it vanishes."""
    coef = 1
    out = [0] * nv
    for v in range(nv):
        d = k[nv + v]
        e = b[v]
        if e < d:
            return None
        f = 1
        for j in range(d):
            f *= e - j
        coef *= f
        out[v] = k[v] + e - d
    return tuple(out), coef


def _content(row):
    g = 0
    for a, b in row.values():
        g = gcd(g, a, b)
        if g == 1:
            return 1
    return g


def ff_reduce_row(row, pivots):
    """Fraction-free reduction of ``row`` against echelon ``pivots``.

    ``pivots`` maps a leading column to its row (a dict whose smallest key is
    that column).  Each step replaces ``row`` by ``p*row - f*pivot_row`` with
    ``p`` the pivot entry and ``f`` the entry being cleared, then divides out
    the integer content.  Returns the reduced row (possibly empty).
    """
    row = dict(row)
    last = -1
    while row:
        cand = [c for c in row if c > last and c in pivots]
        if not cand:
            break
        col = min(cand)
        prow = pivots[col]
        pa, pb = prow[col]
        fa, fb = row[col]
        new = {}
        for c, (a, b) in row.items():
            na = pa * a - pb * b
            nb = pa * b + pb * a
            if na or nb:
                new[c] = (na, nb)
        for c, (a, b) in prow.items():
            sa = fa * a - fb * b
            sb = fa * b + fb * a
            if c in new:
                na, nb = new[c]
                na -= sa
                nb -= sb
                if na or nb:
                    new[c] = (na, nb)
                else:
                    del new[c]
            elif sa or sb:
                new[c] = (-sa, -sb)
        new.pop(col, None)
        g = _content(new) if new else 1
        if g > 1:
            new = {c: (a // g, b // g) for c, (a, b) in new.items()}
        row = new
        last = col
    return row
