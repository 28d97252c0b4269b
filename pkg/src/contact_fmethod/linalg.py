"""Exact nullspaces over Q(i).

Matrices arrive column-wise: column ``j`` is the image of the ``j``-th basis
vector, a sparse dict ``row_key -> GaussScalar``.  Columns that share no rows
are split into independent components first; each component is brought to
echelon form by fraction-free elimination over Z[i] (rows are scaled to clear
denominators, then combined as ``p*row - f*pivot`` with integer content
removed).  Kernel bases are returned in reduced row echelon form with leading
coefficient 1, which makes them canonical for a fixed column order.
"""
from __future__ import annotations

from math import lcm

from . import kernels
from .scalars import ONE, GaussScalar

__all__ = ["nullspace_columns", "rref", "reduce_against", "in_span", "connected_components"]


def connected_components(columns: list[dict]) -> list[list[int]]:
    """Group column indices that are linked through shared row keys."""
    parent = list(range(len(columns)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict = {}
    for j, col in enumerate(columns):
        for r in col:
            k = owner.get(r)
            if k is None:
                owner[r] = j
            else:
                ra, rb = find(j), find(k)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
    groups: dict = {}
    for j in range(len(columns)):
        groups.setdefault(find(j), []).append(j)
    return [groups[k] for k in sorted(groups)]


def _to_gauss_int_rows(columns, cols):
    rows: dict = {}
    for local, j in enumerate(cols):
        for r, c in columns[j].items():
            rows.setdefault(r, {})[local] = c
    out = []
    for r in sorted(rows, key=repr):
        row = rows[r]
        den = 1
        for c in row.values():
            den = lcm(den, c.parts()[2])
        irow = {}
        for k, c in row.items():
            a, b, d = c.parts()
            s = den // d
            irow[k] = (a * s, b * s)
        out.append(irow)
    return out


def _echelon(int_rows):
    pivots: dict = {}
    reduce_row = kernels.ff_reduce_row
    for row in int_rows:
        red = reduce_row(row, pivots)
        if red:
            pivots[min(red)] = red
    return pivots


def _kernel_from_echelon(pivots, ncols):
    free = [c for c in range(ncols) if c not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        x = {f: ONE}
        for p in order:
            row = pivots[p]
            acc = None
            for c, (a, b) in row.items():
                if c == p:
                    continue
                xc = x.get(c)
                if xc is None:
                    continue
                term = xc * GaussScalar._raw(a, b, 1)
                acc = term if acc is None else acc + term
            if acc:
                pa, pb = row[p]
                x[p] = -acc / GaussScalar._raw(pa, pb, 1)
        basis.append({c: v for c, v in x.items() if v})
    return basis


def nullspace_columns(columns: list[dict]) -> list[dict]:
    """Kernel of the column-given linear map, as canonical RREF vectors ``col -> scalar``."""
    out = []
    for comp in connected_components(columns):
        if not any(columns[j] for j in comp):
            vecs = [{j: ONE} for j in comp]
        else:
            pivots = _echelon(_to_gauss_int_rows(columns, comp))
            local = _kernel_from_echelon(pivots, len(comp))
            vecs = [{comp[c]: v for c, v in vec.items()} for vec in local]
        out.extend(rref(vecs))
    out.sort(key=min)
    return out


def reduce_against(vec: dict, basis: dict) -> dict:
    """Reduce ``vec`` by an RREF basis given as ``leading_col -> row``."""
    v = dict(vec)
    for p, row in basis.items():
        c = v.get(p)
        if c:
            for k, val in row.items():
                nv = v.get(k)
                nv = -c * val if nv is None else nv - c * val
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return v


def rref(vectors: list[dict]) -> list[dict]:
    """Reduced row echelon basis of the span, leading coefficients 1, sorted by lead."""
    pivots: dict = {}
    for vec in vectors:
        v = reduce_against(vec, pivots)
        if not v:
            continue
        lead = min(v)
        inv = ONE / v[lead]
        v = {k: c * inv for k, c in v.items()}
        for p, row in list(pivots.items()):
            c = row.get(lead)
            if c:
                pivots[p] = reduce_against(row, {lead: v})
        pivots[lead] = v
    return [pivots[k] for k in sorted(pivots)]


def in_span(vec: dict, basis: list[dict]) -> bool:
    """Membership test against an RREF basis (as returned by :func:`rref`)."""
    return not reduce_against(vec, {min(b): b for b in basis})
