"""Equivariant differential operators from Verma-module homomorphisms.

A homomorphism given by ``phi_0 = sum u_i (x) A_i`` (``u_i`` in U(ubar),
``A_i`` in End S) corresponds to the operator ``sum R(u_i) A_i^T`` on
S-valued functions of the hatted coordinates, where ``R`` is the right
regular action of the Heisenberg group

    f_j -> dxh_j + 1/2 yh_j dzh,   g_j -> dyh_j - 1/2 xh_j dzh,   c -> dzh

and ``A^T`` is the transpose for the pairing ``int f(q) p(q) dq``: it fixes
``q_j``, sends ``dq_j`` to ``-dq_j`` and reverses the order of products.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .liealg import UbarElem, basis
from .reps import RepParams, pi_geom, ssw_dual
from .scalars import I, GaussScalar
from .verma import inv_tau_phi
from .weyl import GEOMETRIC, VarSpace, WeylOp

__all__ = [
    "dualize", "dual_ops", "explicit_Da", "factorized_Da", "intertwine_defect",
    "intertwining_defects", "twistor_components", "EquivariantOp",
]

HALF = GaussScalar(Fraction(1, 2))


def _space(n):
    return VarSpace(n, GEOMETRIC)


def _heisenberg_fields(n):
    s = _space(n)
    dz = WeylOp.d(s, s.iz)
    F = [WeylOp.d(s, s.ix(j)) + (WeylOp.var(s, s.iy(j)) * dz).scale(HALF) for j in range(1, n + 1)]
    G = [WeylOp.d(s, s.iy(j)) - (WeylOp.var(s, s.ix(j)) * dz).scale(HALF) for j in range(1, n + 1)]
    return F, G, dz


def _end_s_dual(space, gamma, delta, transpose):
    """``(q^gamma dq^delta)^T = (-dq)^delta q^gamma``; without ``transpose`` just ``q^gamma (-dq)^delta``."""
    qpart = WeylOp.monomial(space, {space.iq(j + 1): e for j, e in enumerate(gamma) if e})
    dpart = WeylOp.monomial(space, deriv={space.iq(j + 1): e for j, e in enumerate(delta) if e},
                            coef=(-1) ** sum(delta))
    return dpart * qpart if transpose else qpart * dpart


def dualize(u: UbarElem, transpose: bool = True) -> WeylOp:
    """Operator on the geometric side corresponding to ``u`` in U(ubar) (x) End(S).

    ``transpose=False`` maps the End(S) part homomorphically instead; that
    variant does not reproduce the known operators beyond first order and is
    kept only to demonstrate this.
    """
    n = u.n
    s = _space(n)
    F, G, C = _heisenberg_fields(n)
    out = WeylOp.zero(s)
    cache: dict = {}
    for key, coef in u.items():
        alpha, beta, k, gamma, delta = u.split(key)
        ub = cache.get((alpha, beta, k))
        if ub is None:
            ub = WeylOp.scalar(s, 1)
            for i in range(n):
                for _ in range(alpha[i]):
                    ub = ub * F[i]
            for i in range(n):
                for _ in range(beta[i]):
                    ub = ub * G[i]
            for _ in range(k):
                ub = ub * C
            cache[(alpha, beta, k)] = ub
        out = out + (ub * _end_s_dual(s, gamma, delta, transpose)).scale(coef)
    return out


def dual_ops(n: int) -> tuple[WeylOp, WeylOp, WeylOp]:
    """``(D_sh, X_sh, D1)`` with ``D1 = D_sh + 1/2 X_sh dzh``."""
    s = _space(n)
    D = WeylOp.zero(s)
    X = WeylOp.zero(s)
    for j in range(1, n + 1):
        q = WeylOp.var(s, s.iq(j))
        dq = WeylOp.d(s, s.iq(j))
        D = D + (q * WeylOp.d(s, s.ix(j))).scale(I) - WeylOp.d(s, s.iy(j)) * dq
        X = X + (WeylOp.var(s, s.iy(j)) * q).scale(I) + WeylOp.var(s, s.ix(j)) * dq
    D1 = D + (X * WeylOp.d(s, s.iz)).scale(HALF)
    return D, X, D1


@dataclass(frozen=True)
class EquivariantOp:
    n: int
    a: int
    op: WeylOp
    source_lambda: GaussScalar  # parameter of pi* on the source
    target_lambda: GaussScalar  # parameter of pi* on the target


def _equivariant(n, a, op):
    half = GaussScalar(Fraction(a, 2))
    return EquivariantOp(n, a, op, -half, half)


def explicit_Da(n: int, a: int) -> EquivariantOp:
    """The closed forms of D_1 .. D_4."""
    _, _, D1 = dual_ops(n)
    dz = WeylOp.d(_space(n), _space(n).iz)
    sq = D1 * D1

    def shifted(c):
        return sq - dz.scale(I * c)

    if a == 1:
        op = D1
    elif a == 2:
        op = shifted(Fraction(1, 4))
    elif a == 3:
        op = D1 * shifted(1)
    elif a == 4:
        op = shifted(Fraction(1, 4)) * shifted(Fraction(9, 4))
    else:
        raise ValueError("closed forms exist for a <= 4; use dualize(phi0_build(n, a).element)")
    return _equivariant(n, a, op)


def factorized_Da(n: int, a: int) -> EquivariantOp:
    """The conjectured product formula for D_a."""
    if a < 1:
        raise ValueError("a must be positive")
    _, _, D1 = dual_ops(n)
    s = _space(n)
    dz = WeylOp.d(s, s.iz)
    sq = D1 * D1
    if a % 2 == 0:
        op = WeylOp.scalar(s, 1)
        for j in range(a // 2):
            op = op * (sq - dz.scale(I * Fraction((2 * j + 1) ** 2, 4)))
    else:
        op = D1
        for j in range(1, (a - 1) // 2 + 1):
            op = op * (sq - dz.scale(I * j * j))
    return _equivariant(n, a, op)


def _pi_star(n, lam):
    return pi_geom(RepParams(n, GaussScalar.coerce(lam)), ssw_dual)


def intertwine_defect(n: int, a: int, D: WeylOp, X) -> WeylOp:
    """``D pi*_{-a/2}(X) - pi*_{a/2}(X) D`` in normal form."""
    half = GaussScalar(Fraction(a, 2))
    src = _pi_star(n, -half)
    tgt = _pi_star(n, half)
    return D * src(X) - tgt(X) * D


def intertwining_defects(n: int, a: int, D: WeylOp) -> list[tuple[str, WeylOp]]:
    """Nonzero defects over the whole basis; empty means D is equivariant."""
    half = GaussScalar(Fraction(a, 2))
    src = _pi_star(n, -half)
    tgt = _pi_star(n, half)
    out = []
    for X in basis(n):
        d = D * src(X) - tgt(X) * D
        if d:
            out.append((X.name, d))
    return out


def twistor_components(params: RepParams, w_slice) -> list[WeylOp]:
    """For each harmonic ``w`` of degree m: the operator dual to the singular vector ``w``.

    Requires the realization parameter ``m + n - 1/2``.
    """
    n, m = params.n, w_slice.m
    if params.n != w_slice.n or params.lam != GaussScalar(Fraction(2 * m + 2 * n - 1, 2)):
        raise ValueError(f"parameter must equal m + n - 1/2 = {Fraction(2 * m + 2 * n - 1, 2)}")
    return [dualize(inv_tau_phi(params, w, m)) for w in w_slice.basis]
