"""The sl(2)-triple (D_s, E + n, X_s) and the Fischer decomposition.

``M_m`` is the space of z-free polynomials of xy-degree ``m`` killed by D_s.
Every z-free polynomial splits uniquely as ``sum_b X_s^b m_b`` with ``m_b``
harmonic; the pieces are peeled off from the top using the closed-form ladder
coefficient ``D_s X_s^r v = -i r (2m + 2n + r - 1)/2 X_s^{r-1} v``.

S = C[q] is infinite dimensional, so harmonic spaces are computed inside a
box ``q-degree <= q_max``.  Membership is exact; dimensions are box-relative.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import nullspace_columns
from .reps import sl2_operators
from .scalars import I, ONE, GaussScalar
from .weyl import FOURIER, PolyVec, VarSpace, WeylOp, commutator, slice_basis

__all__ = [
    "build_sl2_ops", "HarmonicSlice", "mm_basis", "ladder_coefficient", "ladder_check",
    "LadderResult", "decompose", "FischerComponent", "TruncationError", "xy_degree",
    "sl2_relations", "reconstruct",
]


class TruncationError(RuntimeError):
    """A computation needed more q-degree than the box allows."""


@lru_cache(maxsize=None)
def build_sl2_ops(n: int) -> tuple[WeylOp, WeylOp, WeylOp]:
    """``(D_s, E, X_s)`` on the Fourier side."""
    return sl2_operators(VarSpace(n, FOURIER))


def sl2_relations(n: int) -> list[tuple[str, WeylOp]]:
    """Defects of ``[E+n, D_s] = -D_s``, ``[E+n, X_s] = X_s``, ``[X_s, D_s] = i(E+n)``."""
    D, E, X = build_sl2_ops(n)
    H = E + WeylOp.scalar(E.space, n)
    return [
        ("[E+n, D_s] = -D_s", commutator(H, D) + D),
        ("[E+n, X_s] = X_s", commutator(H, X) - X),
        ("[X_s, D_s] = i(E+n)", commutator(X, D) - H.scale(I)),
    ]


def xy_degree(vec: PolyVec) -> set[int]:
    cut = 2 * vec.space.n
    return {sum(k[:cut]) for k in vec.terms}


@dataclass(frozen=True)
class HarmonicSlice:
    n: int
    m: int
    q_max: int
    basis: tuple  # PolyVec, RREF w.r.t. the slice order
    parities: tuple  # "even"/"odd" q-degree parity of each basis vector

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def mm_basis(n: int, m: int, q_max: int) -> HarmonicSlice:
    """Exact basis of ``M_m`` within q-degree ``<= q_max``."""
    space = VarSpace(n, FOURIER)
    D, _, _ = build_sl2_ops(n)
    monos = slice_basis(space, m, q_max, z_free=True)
    cols = [D(PolyVec.monomial(space, b)).terms for b in monos]
    kern = nullspace_columns(cols)
    vecs, par = [], []
    cut = 2 * n + 1
    for k in kern:
        v = PolyVec(space, {monos[j]: c for j, c in k.items()})
        vecs.append(v)
        degs = {sum(key[cut:]) % 2 for key in v.terms}
        par.append("even" if degs == {0} else "odd" if degs == {1} else "mixed")
    return HarmonicSlice(n, m, q_max, tuple(vecs), tuple(par))


def ladder_coefficient(n: int, m: int, r: int) -> GaussScalar:
    """``-i r (2m + 2n + r - 1) / 2``."""
    return GaussScalar(0, Fraction(-r * (2 * m + 2 * n + r - 1), 2))


@dataclass
class LadderResult:
    ok: bool
    failures: list  # (identity label, nonzero difference)


def _is_harmonic_of_degree(v: PolyVec, m: int) -> bool:
    D, _, _ = build_sl2_ops(v.space.n)
    return not D(v) and xy_degree(v) <= {m} and v.z_degree() <= 0


def ladder_check(n: int, m: int, r: int, v: PolyVec, derivatives: bool = True) -> LadderResult:
    """Check the D_s X_s^r ladder identity and the d/dx_i, d/dy_i expansions on ``v``."""
    if not _is_harmonic_of_degree(v, m):
        raise ValueError("v is not in M_m")
    D, _, X = build_sl2_ops(n)
    space = v.space
    powers = [v]
    for _ in range(r):
        powers.append(X(powers[-1]))
    zero = PolyVec(space)

    def xp(k):
        return powers[k] if k >= 0 else zero

    failures = []
    lhs = D(powers[r])
    rhs = xp(r - 1).scale(ladder_coefficient(n, m, r)) if r else zero
    if lhs != rhs:
        failures.append(("D_s X_s^r", lhs - rhs))
    if derivatives:
        half_rr = Fraction(r * (r - 1), 2)
        for i in range(1, n + 1):
            dx = WeylOp.d(space, space.ix(i))
            dy = WeylOp.d(space, space.iy(i))
            qi = WeylOp.var(space, space.iq(i))
            yi = WeylOp.var(space, space.iy(i))
            xi = WeylOp.var(space, space.ix(i))
            dq = WeylOp.d(space, space.iq(i))
            Xr = X ** r
            lhs = dx(powers[r])
            rhs = (qi(xp(r - 1)).scale(I * r) + yi(xp(r - 2)).scale(I * half_rr)
                   + Xr(dx(v)))
            if lhs != rhs:
                failures.append((f"dx{i} X_s^r", lhs - rhs))
            lhs = dy(powers[r])
            rhs = (dq(xp(r - 1)).scale(r) - xi(xp(r - 2)).scale(I * half_rr)
                   + Xr(dy(v)))
            if lhs != rhs:
                failures.append((f"dy{i} X_s^r", lhs - rhs))
    return LadderResult(not failures, failures)


@dataclass(frozen=True)
class FischerComponent:
    b: int          # power of X_s
    m: int          # xy-degree of the harmonic piece
    vec: PolyVec    # the harmonic piece m_b


def _split_by_xy_degree(v: PolyVec) -> dict[int, PolyVec]:
    cut = 2 * v.space.n
    parts: dict = {}
    for k, c in v.terms.items():
        parts.setdefault(sum(k[:cut]), {})[k] = c
    return {d: PolyVec(v.space, t) for d, t in sorted(parts.items())}


def decompose(n: int, v: PolyVec, q_max: int) -> list[FischerComponent]:
    """Fischer decomposition ``v = sum X_s^b m_b`` with each ``m_b`` in ker D_s."""
    if v.space != VarSpace(n, FOURIER):
        raise ValueError("vector does not live on the Fourier space of rank n")
    if v.z_degree() > 0:
        raise ValueError("decompose expects z-free input")
    if v.q_degree() > q_max:
        raise TruncationError(f"input q-degree {v.q_degree()} exceeds budget {q_max}")
    D, _, X = build_sl2_ops(n)
    out = []
    for d, w in _split_by_xy_degree(v).items():
        steps = 0
        while w:
            steps += 1
            if steps > d + 1:
                raise TruncationError("ladder peeling did not terminate")
            chain = [w]
            while True:
                nxt = D(chain[-1])
                if not nxt:
                    break
                chain.append(nxt)
            B = len(chain) - 1
            mprime = d - B
            denom = ONE
            for r in range(1, B + 1):
                denom = denom * ladder_coefficient(n, mprime, r)
            piece = chain[B].scale(ONE / denom)
            out.append(FischerComponent(B, mprime, piece))
            lifted = piece
            for _ in range(B):
                lifted = X(lifted)
            w = w - lifted
    out.sort(key=lambda c: (c.b, c.m))
    return out


def reconstruct(n: int, comps) -> PolyVec:
    _, _, X = build_sl2_ops(n)
    acc = PolyVec(VarSpace(n, FOURIER))
    for c in comps:
        v = c.vec
        for _ in range(c.b):
            v = X(v)
        acc = acc + v
    return acc
