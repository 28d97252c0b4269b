"""Verma-module side of the construction.

Elements of the generalized Verma module are written as ``u (x) v`` with
``u`` in U(ubar) (PBW form) and ``v`` in S = C[q].  The isomorphism onto
C[x, y, z] (x) S evaluates ``u`` through ``pi_hat`` on the vector ``v``:
``f^alpha g^beta c^k (x) v  ->  pi(f)^alpha pi(g)^beta pi(c)^k v``.

Homomorphism data ``phi_0`` lives in U(ubar) (x) End(S); applied to a vector
``v`` it gives the Verma-module element whose image is ``(-1)^a T^n_a v``
(the sign comes from the convention in :func:`qs_ps_elems`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .liealg import UbarElem, symmetrize_beta
from .reps import RepParams, pi_hat
from .scalars import I, GaussScalar
from .singular import t_coefficients, t_operator
from .weyl import FOURIER, PolyVec, VarSpace, WeylOp

__all__ = [
    "qs_ps_elems", "beta_qs_expand", "printed_beta_qs", "phi0_build", "printed_phi0",
    "VermaHom", "tau_phi_apply", "inv_tau_phi", "apply_end_s",
]


def qs_ps_elems(n: int) -> tuple[UbarElem, UbarElem]:
    """``(Q_s, P_s)``, both ``sum_j (i f_j q_j + g_j dq_j)``.

    ``Q_s`` is read in S(ubar) (x) End(S) and ``P_s`` in U(ubar) (x) End(S).
    They carry the same sign so that ``beta(Q_s) = P_s``.  With this sign
    ``tau_phi(beta(Q_s^k) v) = (-X_s)^k v``; the opposite sign would give
    ``X_s^k v`` but break ``beta(Q_s) = P_s``.  No single sign gives both.
    """
    P = UbarElem.zero(n)
    for j in range(1, n + 1):
        P = P + (UbarElem.gen(n, f"f{j}") * UbarElem.gen(n, f"q{j}")).scale(I)
        P = P + UbarElem.gen(n, f"g{j}") * UbarElem.gen(n, f"dq{j}")
    return P, P


def beta_qs_expand(n: int, k: int) -> UbarElem:
    """``(beta (x) id)(Q_s^k)`` with Q_s^k taken in S(ubar) (x) End(S)."""
    Q, _ = qs_ps_elems(n)
    return symmetrize_beta(Q.sym_pow(k))


def printed_beta_qs(n: int, k: int) -> UbarElem:
    """Closed forms of ``beta(Q_s^k)`` for k = 1..4."""
    _, P = qs_ps_elems(n)
    c = UbarElem.gen(n, "c")
    half_i = GaussScalar(0, Fraction(1, 2))
    if k == 1:
        return P
    if k == 2:
        return P * P - c.scale(half_i * n)
    if k == 3:
        return P ** 3 - (P * c).scale(half_i * (3 * n + 1))
    if k == 4:
        return (P ** 4 - (P * P * c).scale(half_i * (6 * n + 4))
                - (c * c).scale(Fraction(3 * n * n + 3 * n, 4)))
    raise ValueError("closed forms exist for k = 1..4")


@dataclass(frozen=True)
class VermaHom:
    n: int
    a: int
    element: UbarElem
    lam: GaussScalar  # inducing weight of the target Verma module
    mu: GaussScalar   # inducing weight of the source Verma module

    @property
    def realization_lam(self) -> GaussScalar:
        return self.lam + (self.n + 1)

    @property
    def square_sign(self) -> int:
        """``tau_phi(element v) = square_sign * T^n_a v`` (see :func:`qs_ps_elems`)."""
        return -1 if self.a % 2 else 1


def phi0_build(n: int, a: int) -> VermaHom:
    """``sum_k (-1)^k a_k c^k beta(Q_s^(a-2k))`` with ``a_k`` the T-operator coefficients."""
    if a < 1:
        raise ValueError("a must be positive")
    c = UbarElem.gen(n, "c")
    out = UbarElem.zero(n)
    for k, ak in enumerate(t_coefficients(n, a)):
        out = out + (c ** k * beta_qs_expand(n, a - 2 * k)).scale(ak * (-1) ** k)
    half_a = Fraction(a, 2)
    return VermaHom(n, a, out, GaussScalar(-(n + 1) + half_a), GaussScalar(-(n + 1) - half_a))


def printed_phi0(n: int, a: int) -> UbarElem:
    """Closed forms of ``phi_0`` for a = 1..4."""
    _, P = qs_ps_elems(n)
    c = UbarElem.gen(n, "c")
    if a == 1:
        return P
    if a == 2:
        return P * P - c.scale(I * (n + Fraction(1, 4)))
    if a == 3:
        return P ** 3 - (c * P).scale(I * (3 * n + 2))
    if a == 4:
        return (P ** 4 - (c * P * P).scale(I * (6 * n + Fraction(13, 2)))
                - (c * c).scale(3 * n * n + Fraction(9, 2) * n + Fraction(9, 16)))
    raise ValueError("closed forms exist for a = 1..4")


def _end_s_op(space: VarSpace, gamma, delta) -> WeylOp:
    mult = {space.iq(j + 1): e for j, e in enumerate(gamma) if e}
    deriv = {space.iq(j + 1): e for j, e in enumerate(delta) if e}
    return WeylOp.monomial(space, mult, deriv)


def apply_end_s(u: UbarElem, v: PolyVec) -> UbarElem:
    """Apply the End(S) parts of ``u`` to the q-vector ``v``; the result has no dq part."""
    n = u.n
    space = VarSpace(n, FOURIER)
    cut = 2 * n + 1
    out: dict = {}
    zero_d = (0,) * n
    for key, coef in u.terms.items():
        alpha, beta, k, gamma, delta = u.split(key)
        w = _end_s_op(space, gamma, delta)(v)
        for wk, wc in w.terms.items():
            nk = alpha + beta + (k,) + tuple(wk[cut:]) + zero_d
            val = coef * wc
            out[nk] = out[nk] + val if nk in out else val
    return UbarElem(n, out)


def tau_phi_apply(params: RepParams, u: UbarElem, v: PolyVec | None = None) -> PolyVec:
    """Image of the Verma-module element ``u (x) v`` in C[x, y, z] (x) S.

    With ``v`` omitted, ``u`` must be S-valued (no dq part) and is read as
    ``u (x) 1`` with its q part as the vector.
    """
    n = params.n
    space = VarSpace(n, FOURIER)
    if v is None:
        v = PolyVec.constant(space)
    if any(any(k[:2 * n + 1]) for k in v.terms):
        raise ValueError("inducing vector must depend on q only")
    rep = pi_hat(params)
    F = [rep(f"f{i}") for i in range(1, n + 1)]
    G = [rep(f"g{i}") for i in range(1, n + 1)]
    C = rep("c")
    out = PolyVec(space)
    for key, coef in u.items():
        alpha, beta, k, gamma, delta = u.split(key)
        w = _end_s_op(space, gamma, delta)(v)
        for _ in range(k):
            w = C(w)
        for i in reversed(range(n)):
            for _ in range(beta[i]):
                w = G[i](w)
        for i in reversed(range(n)):
            for _ in range(alpha[i]):
                w = F[i](w)
        out = out + w.scale(coef)
    return out


def inv_tau_phi(params: RepParams, target: PolyVec, m: int | None = None) -> UbarElem:
    """The unique S-valued ``u`` with ``tau_phi_apply(u) = target``.

    ``pi(f_i)``, ``pi(g_i)`` and ``pi(c)`` act as ``-x_i``, ``-y_i``, ``-z`` up to
    terms of strictly higher z-degree, so the preimage is read off z-degree by
    z-degree.
    """
    n = params.n
    space = target.space
    if m is not None and target.homogeneities() - {m}:
        raise ValueError(f"target is not in the homogeneity-{m} slice")
    iz = space.iz
    out = UbarElem.zero(n)
    rest = target
    zero_d = (0,) * n
    guard = 0
    while rest:
        guard += 1
        if guard > 2 + max(target.homogeneities(), default=0):
            raise AssertionError("inverse evaluation did not terminate")
        low = min(k[iz] for k in rest.terms)
        layer = {}
        for k, c in rest.terms.items():
            if k[iz] != low:
                continue
            alpha, beta, gamma = k[:n], k[n:2 * n], k[2 * n + 1:]
            sign = -1 if (sum(alpha) + sum(beta) + low) % 2 else 1
            layer[alpha + beta + (low,) + gamma + zero_d] = c * sign
        piece = UbarElem(n, layer)
        out = out + piece
        rest = target - tau_phi_apply(params, out)
        if any(k[iz] <= low for k in rest.terms):
            raise AssertionError("triangularity violated")
    return out
