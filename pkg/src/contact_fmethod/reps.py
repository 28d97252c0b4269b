"""Operator realizations of sp(2n+2) by differential operators.

Two pictures are produced:

* ``pi_geom``: acts on functions of the hatted coordinates on ubar, with an
  arbitrary inducing module ``sigma`` twisted by ``lambda + rho``;
* ``pi_hat``: the Fourier picture on C[ubar*] (x) S, either with the
  Segal-Shale-Weil action written out in closed form (``pi_hat``) or with a
  pluggable ``sigma`` twisted by ``lambda - rho`` (``pi_hat_sigma``).

``rho`` is ``n + 1`` times the fundamental character, which is 1 on ``h`` and
vanishes on the semisimple part of the Levi factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .liealg import BasisElem, basis, basis_by_name, bracket_matrix
from .scalars import I, GaussScalar
from .weyl import FOURIER, GEOMETRIC, VarSpace, WeylOp, commutator

__all__ = [
    "RepParams", "SigmaModel", "ssw", "ssw_dual", "trivial_character",
    "Realization", "pi_hat", "pi_hat_sigma", "pi_geom", "check_homomorphism",
    "DefectReport", "sl2_operators",
]

HALF = GaussScalar(Fraction(1, 2))


@dataclass(frozen=True)
class RepParams:
    n: int
    lam: GaussScalar = field(default_factory=lambda: GaussScalar(0))

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "lam", GaussScalar.coerce(self.lam))

    @property
    def rho_scalar(self) -> int:
        return self.n + 1


class _Vars:
    """Shorthand constructors for the generators of one Weyl algebra."""

    def __init__(self, space: VarSpace):
        self.s = space

    def x(self, i):
        return WeylOp.var(self.s, self.s.ix(i))

    def y(self, i):
        return WeylOp.var(self.s, self.s.iy(i))

    def z(self):
        return WeylOp.var(self.s, self.s.iz)

    def q(self, i):
        return WeylOp.var(self.s, self.s.iq(i))

    def dx(self, i):
        return WeylOp.d(self.s, self.s.ix(i))

    def dy(self, i):
        return WeylOp.d(self.s, self.s.iy(i))

    def dz(self):
        return WeylOp.d(self.s, self.s.iz)

    def dq(self, i):
        return WeylOp.d(self.s, self.s.iq(i))

    def c(self, v):
        return WeylOp.scalar(self.s, v)

    def euler_x(self):
        return _sum(self.s, (self.x(j) * self.dx(j) for j in range(1, self.s.n + 1)))

    def euler_y(self):
        return _sum(self.s, (self.y(j) * self.dy(j) for j in range(1, self.s.n + 1)))

    def euler_z(self):
        return self.z() * self.dz()


def _sum(space, ops):
    out = WeylOp.zero(space)
    for op in ops:
        out = out + op
    return out


# ---------------------------------------------------------------------------
# inducing modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaModel:
    """A p-module on C[q]: ``builder(space, tag, i, j)`` returns a q-only operator.

    ``tag`` is one of ``h``, ``hA``, ``hB``, ``hC``; the nilradical acts trivially.
    """

    name: str
    builder: object

    def op(self, space: VarSpace, name: str) -> WeylOp:
        b = basis_by_name(space.n, name)
        if b.tag not in ("h", "hA", "hB", "hC"):
            if b.tag in ("d", "e", "a"):
                return WeylOp.zero(space)
            raise ValueError(f"{name} is not in the parabolic subalgebra")
        return self.builder(_Vars(space), b.tag, *b.idx)


def _ssw_builder(sign):
    def build(v: _Vars, tag, i=None, j=None):
        if tag == "h":
            return WeylOp.zero(v.s)
        if tag == "hA":
            op = -(v.q(j) * v.dq(i))
            if i == j:
                op = op - HALF
            return op
        if tag == "hB":
            return (v.dq(i) * v.dq(j)).scale(I * sign)
        if tag == "hC":
            return (v.q(i) * v.q(j)).scale(I * sign)
        raise ValueError(tag)
    return build


def _trivial_builder(v: _Vars, tag, i=None, j=None):
    return WeylOp.zero(v.s)


ssw = SigmaModel("ssw", _ssw_builder(1))
# contragredient: -sigma^T, where the transpose fixes q and negates dq
ssw_dual = SigmaModel("ssw_dual", _ssw_builder(-1))
trivial_character = SigmaModel("trivial_character", _trivial_builder)

SIGMAS = {m.name: m for m in (ssw, ssw_dual, trivial_character)}


def _pair_name(n, tag, i, j):
    if tag in ("hB", "hC") and i > j:
        i, j = j, i
    return f"{tag}{i}{j}" if n < 10 else f"{tag}{i}_{j}"


# ---------------------------------------------------------------------------
# realizations
# ---------------------------------------------------------------------------

class Realization:
    """Memoized map from basis elements of sp(2n+2) to Weyl algebra elements."""

    def __init__(self, n: int, space: VarSpace, build, label: str):
        self.n = n
        self.space = space
        self._build = build
        self._cache: dict = {}
        self.label = label

    def __call__(self, X) -> WeylOp:
        name = X.name if isinstance(X, BasisElem) else X
        op = self._cache.get(name)
        if op is None:
            b = basis_by_name(self.n, name)
            op = self._build(b)
            self._cache[name] = op
        return op

    def combination(self, coords: dict) -> WeylOp:
        out = WeylOp.zero(self.space)
        for name, c in coords.items():
            out = out + self(name).scale(GaussScalar.coerce(c))
        return out


def sl2_operators(space: VarSpace):
    """``(D_s, E, X_s)`` on C[x, y, z] (x) C[q]."""
    v = _Vars(space)
    n = space.n
    D = _sum(space, (v.q(j) * v.dy(j) * I - v.dx(j) * v.dq(j) for j in range(1, n + 1)))
    E = v.euler_x() + v.euler_y()
    X = _sum(space, (v.x(j) * v.q(j) * I + v.y(j) * v.dq(j) for j in range(1, n + 1)))
    return D, E, X


def pi_hat(params: RepParams) -> Realization:
    """Fourier-picture realization with the Segal-Shale-Weil action, closed form."""
    n, lam = params.n, params.lam
    space = VarSpace(n, FOURIER)
    v = _Vars(space)
    Ds, _, _ = sl2_operators(space)
    Ex, Ey, Ez = v.euler_x(), v.euler_y(), v.euler_z()
    E3 = Ex + Ey + Ez
    shift = E3 - lam + n - HALF

    def build(b: BasisElem):
        t = b.tag
        if t == "f":
            i, = b.idx
            return -v.x(i) - (v.z() * v.dy(i)).scale(HALF)
        if t == "g":
            i, = b.idx
            return -v.y(i) + (v.z() * v.dx(i)).scale(HALF)
        if t == "c":
            return -v.z()
        if t == "h":
            return -Ex - Ey - Ez.scale(2) + lam - (n + 1)
        if t in ("hA", "hB", "hC"):
            return _hat_levi_part(v, t, *b.idx) + ssw.op(space, b.name)
        if t == "d":
            i, = b.idx
            return (v.y(i) * v.dz()).scale(-2) + v.dx(i) * shift + v.q(i) * Ds
        if t == "e":
            i, = b.idx
            return (v.x(i) * v.dz()).scale(2) + v.dy(i) * shift - (v.dq(i) * Ds).scale(I)
        if t == "a":
            return (v.dz() * (E3 - lam + n)).scale(4) + (Ds * Ds).scale(I)
        raise ValueError(f"unknown basis tag {t!r}")

    return Realization(n, space, build, "pi_hat")


def _hat_levi_part(v: _Vars, tag, i, j):
    if tag == "hA":
        return v.x(i) * v.dx(j) - v.y(j) * v.dy(i)
    if tag == "hB":
        return v.x(i) * v.dy(j) + v.x(j) * v.dy(i)
    return v.y(i) * v.dx(j) + v.y(j) * v.dx(i)


def _geom_levi_part(v: _Vars, tag, i, j):
    if tag == "hA":
        return -(v.x(j) * v.dx(i) - v.y(i) * v.dy(j))
    if tag == "hB":
        return -(v.y(j) * v.dx(i) + v.y(i) * v.dx(j))
    return -(v.x(j) * v.dy(i) + v.x(i) * v.dy(j))


def _twisted(sigma: SigmaModel, space: VarSpace, shift):
    """``sigma_{lambda +- rho}`` as a function of a basis name."""
    n = space.n

    def sig(tag, i=None, j=None):
        if tag == "h":
            return sigma.op(space, "h") + shift
        return sigma.op(space, _pair_name(n, tag, i, j))
    return sig


def pi_hat_sigma(params: RepParams, sigma: SigmaModel) -> Realization:
    """Fourier picture with an arbitrary inducing module, twisted by ``lambda - rho``."""
    n = params.n
    space = VarSpace(n, FOURIER)
    v = _Vars(space)
    sig = _twisted(sigma, space, params.lam - (n + 1))
    Ex, Ey, Ez = v.euler_x(), v.euler_y(), v.euler_z()
    E3m1 = Ex + Ey + Ez - 1
    rng = range(1, n + 1)

    def build(b: BasisElem):
        t = b.tag
        if t in ("f", "g", "c"):
            return pi_hat(params)(b)
        if t == "h":
            return -Ex - Ey - Ez.scale(2) + sig("h")
        if t in ("hA", "hB", "hC"):
            return _hat_levi_part(v, t, *b.idx) + sig(t, *b.idx)
        if t == "d":
            i, = b.idx
            out = (v.y(i) * v.dz()).scale(-2) + v.dx(i) * E3m1 - v.dx(i) * sig("h")
            for j in rng:
                out = out + v.dx(j) * sig("hA", j, i) + v.dy(j) * sig("hC", i, j)
            return out
        if t == "e":
            i, = b.idx
            out = (v.x(i) * v.dz()).scale(2) + v.dy(i) * E3m1 - v.dy(i) * sig("h")
            for j in rng:
                out = out - v.dy(j) * sig("hA", i, j) + v.dx(j) * sig("hB", i, j)
            return out
        if t == "a":
            out = (v.dz() * E3m1).scale(4) - (v.dz() * sig("h")).scale(4)
            for i in rng:
                for j in rng:
                    out = (out - (v.dx(i) * v.dy(j) * sig("hA", i, j)).scale(2)
                           + v.dx(i) * v.dx(j) * sig("hB", i, j)
                           - v.dy(i) * v.dy(j) * sig("hC", i, j))
            return out
        raise ValueError(f"unknown basis tag {t!r}")

    return Realization(n, space, build, f"pi_hat[{sigma.name}]")


def pi_geom(params: RepParams, sigma: SigmaModel) -> Realization:
    """Geometric picture on functions of (xh, yh, zh) with values in the module, twist ``lambda + rho``."""
    n = params.n
    space = VarSpace(n, GEOMETRIC)
    v = _Vars(space)
    sig = _twisted(sigma, space, params.lam + (n + 1))
    Ex, Ey, Ez = v.euler_x(), v.euler_y(), v.euler_z()
    E3 = Ex + Ey + Ez
    rng = range(1, n + 1)

    def build(b: BasisElem):
        t = b.tag
        if t == "f":
            i, = b.idx
            return -v.dx(i) + (v.y(i) * v.dz()).scale(HALF)
        if t == "g":
            i, = b.idx
            return -v.dy(i) - (v.x(i) * v.dz()).scale(HALF)
        if t == "c":
            return -v.dz()
        if t == "h":
            return Ex + Ey + Ez.scale(2) + sig("h")
        if t in ("hA", "hB", "hC"):
            return _geom_levi_part(v, t, *b.idx) + sig(t, *b.idx)
        if t == "d":
            i, = b.idx
            out = (v.z() * v.dy(i)).scale(2) + v.x(i) * E3 + v.x(i) * sig("h")
            for j in rng:
                out = out - v.x(j) * sig("hA", j, i) - v.y(j) * sig("hC", i, j)
            return out
        if t == "e":
            i, = b.idx
            out = (v.z() * v.dx(i)).scale(-2) + v.y(i) * E3 + v.y(i) * sig("h")
            for j in rng:
                out = out + v.y(j) * sig("hA", i, j) - v.x(j) * sig("hB", i, j)
            return out
        if t == "a":
            out = (v.z() * E3).scale(4) + (v.z() * sig("h")).scale(4)
            for i in rng:
                for j in rng:
                    out = (out - (v.x(i) * v.y(j) * sig("hA", i, j)).scale(2)
                           + v.x(i) * v.x(j) * sig("hB", i, j)
                           - v.y(i) * v.y(j) * sig("hC", i, j))
            return out
        raise ValueError(f"unknown basis tag {t!r}")

    return Realization(n, space, build, f"pi_geom[{sigma.name}]")


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class DefectReport:
    label: str
    n: int
    pairs_checked: int
    defects: list  # (X name, Y name, WeylOp)

    @property
    def ok(self) -> bool:
        return not self.defects

    def to_json(self) -> dict:
        return {
            "realization": self.label,
            "n": self.n,
            "pairs_checked": self.pairs_checked,
            "defects": [{"X": a, "Y": b, "defect": str(d)} for a, b, d in self.defects],
        }


def check_homomorphism(rep: Realization, n: int | None = None, ordered: bool = False) -> DefectReport:
    """Compare ``[rep X, rep Y]`` with ``rep [X, Y]`` on basis pairs.

    By antisymmetry unordered pairs suffice; ``ordered=True`` checks all of them.
    """
    n = rep.n if n is None else n
    B = basis(n)
    defects = []
    checked = 0
    for a, X in enumerate(B):
        for b, Y in enumerate(B):
            if not ordered and b <= a:
                continue
            checked += 1
            lhs = commutator(rep(X), rep(Y))
            rhs = rep.combination(bracket_matrix(X, Y))
            diff = lhs - rhs
            if diff:
                defects.append((X.name, Y.name, diff))
    return DefectReport(rep.label, n, checked, defects)
