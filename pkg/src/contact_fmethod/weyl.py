"""Sparse normal-ordered Weyl algebra on C[x, y, z] (x) C[q].

Variables are laid out as ``x_1..x_n, y_1..y_n, z, q_1..q_n`` (``nv = 3n+1``).
A Weyl monomial is the flat tuple of its multiplication exponents followed by
its derivative exponents, always read in normal order (all multiplications to
the left of all derivatives).  The geometric picture uses the same layout with
hatted names ``xh``, ``yh``, ``zh``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable

from . import kernels
from .scalars import ONE, ZERO, GaussScalar, parse_scalar

__all__ = [
    "VarSpace", "WeylOp", "PolyVec", "SpaceMismatchError",
    "commutator", "slice_basis", "monomials_of_degree",
]

FOURIER = "fourier"
GEOMETRIC = "geometric"


class SpaceMismatchError(ValueError):
    """Operands live on different variable spaces."""


@dataclass(frozen=True)
class VarSpace:
    n: int
    picture: str = FOURIER

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.picture not in (FOURIER, GEOMETRIC):
            raise ValueError(f"unknown picture {self.picture!r}")

    @property
    def nv(self) -> int:
        return 3 * self.n + 1

    # index helpers (i is 1-based as in the formulas)
    def ix(self, i: int) -> int:
        self._check_index(i)
        return i - 1

    def iy(self, i: int) -> int:
        self._check_index(i)
        return self.n + i - 1

    @property
    def iz(self) -> int:
        return 2 * self.n

    def iq(self, i: int) -> int:
        self._check_index(i)
        return 2 * self.n + i

    def _check_index(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} outside 1..{self.n}")

    def var_names(self) -> list[str]:
        h = "h" if self.picture == GEOMETRIC else ""
        n = self.n
        return ([f"x{h}{i}" for i in range(1, n + 1)] + [f"y{h}{i}" for i in range(1, n + 1)]
                + [f"z{h}"] + [f"q{i}" for i in range(1, n + 1)])

    def weights(self) -> list[int]:
        """Homogeneity weights: x, y count 1, z counts 2, q counts 0."""
        n = self.n
        return [1] * (2 * n) + [2] + [0] * n


def _check_same(a, b):
    if a.space != b.space:
        raise SpaceMismatchError(f"{a.space} vs {b.space}")


def _clean(terms: dict) -> dict:
    return {k: c for k, c in terms.items() if c}


def _fmt_mono(names, exps, prefix=""):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(prefix + name)
        elif e:
            parts.append(f"{prefix}{name}^{e}")
    return parts


def _fmt_coef_term(coef: GaussScalar, factors: list[str]) -> str:
    body = "*".join(factors)
    if not body:
        return f"({coef})" if coef != ONE else "1"
    if coef == ONE:
        return body
    if coef == -ONE:
        return "-" + body
    return f"({coef})*{body}"


def _join_terms(parts) -> str:
    out = ""
    for p in parts:
        if not out:
            out = p
        elif p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def _top_level_terms(text: str):
    # split at " + " / " - " outside parentheses, keeping the sign
    depth, start, sign, out = 0, 0, 1, []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text[i:i + 3] in (" + ", " - "):
            out.append((sign, text[start:i]))
            sign = -1 if text[i + 1] == "-" else 1
            start = i + 3
            i += 3
            continue
        i += 1
    out.append((sign, text[start:]))
    return out


def _split_terms(text: str) -> list[tuple[GaussScalar, list[str]]]:
    """Terms as ``(coef, factors)``; scalar factors such as ``2`` or ``i`` fold into ``coef``."""
    text = text.strip()
    if text == "0":
        return []
    out = []
    for sign, term in _top_level_terms(text):
        term = term.strip()
        coef = ONE if sign > 0 else -ONE
        if term.startswith("-"):
            coef = -coef
            term = term[1:]
        if term.startswith("("):
            close = term.index(")")
            coef = coef * parse_scalar(term[1:close])
            rest = term[close + 1:]
            if rest and not rest.startswith("*"):
                raise ValueError(f"malformed term {term!r}")
            raw = rest[1:].split("*") if rest else []
        else:
            raw = term.split("*")
        factors = []
        for f in raw:
            if f == "i" or (f and f[0].isdigit()):
                coef = coef * parse_scalar(f)
            else:
                factors.append(f)
        out.append((coef, factors))
    return out


_FACTOR = re.compile(r"^(d?)([a-z]+h?\d*)(?:\^(\d+))?$")


class WeylOp:
    """Element of the Weyl algebra in normal form: sparse map monomial -> coefficient."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: dict | None = None):
        self.space = space
        self.terms = _clean(terms or {})

    # -- constructors ------------------------------------------------------
    @classmethod
    def scalar(cls, space, c) -> "WeylOp":
        c = GaussScalar.coerce(c)
        return cls(space, {(0,) * (2 * space.nv): c})

    @classmethod
    def zero(cls, space) -> "WeylOp":
        return cls(space, {})

    @classmethod
    def monomial(cls, space, mult=None, deriv=None, coef=ONE) -> "WeylOp":
        """``mult``/``deriv`` are dicts ``var_index -> exponent``."""
        key = [0] * (2 * space.nv)
        for v, e in (mult or {}).items():
            key[v] += e
        for v, e in (deriv or {}).items():
            key[space.nv + v] += e
        return cls(space, {tuple(key): GaussScalar.coerce(coef)})

    @classmethod
    def var(cls, space, index) -> "WeylOp":
        return cls.monomial(space, mult={index: 1})

    @classmethod
    def d(cls, space, index) -> "WeylOp":
        return cls.monomial(space, deriv={index: 1})

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.scalar(self.space, other)
        _check_same(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return WeylOp(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.scalar(self.space, other)
        return self + (-other)

    def __rsub__(self, other):
        return WeylOp.scalar(self.space, other) - self

    def scale(self, c) -> "WeylOp":
        c = GaussScalar.coerce(c)
        if not c:
            return WeylOp.zero(self.space)
        return WeylOp(self.space, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylOp):
            return normal_mul(self, other)
        if isinstance(other, PolyVec):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = WeylOp.scalar(self.space, 1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, vec: "PolyVec") -> "PolyVec":
        return apply(self, vec)

    # -- inspection --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.space == other.space and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Terms in the fixed deterministic order."""
        return sorted(self.terms.items())

    def degrees(self):
        """Set of weighted degree shifts (mult weight - deriv weight) over all terms."""
        w = self.space.weights()
        nv = self.space.nv
        return {sum(w[v] * (k[v] - k[nv + v]) for v in range(nv)) for k in self.terms}

    def deriv_order(self) -> int:
        """Largest total derivative order in x, y, z (q excluded)."""
        nv = self.space.nv
        cut = 2 * self.space.n + 1
        return max((sum(k[nv:nv + cut]) for k in self.terms), default=0)

    def q_only(self) -> bool:
        nv, cut = self.space.nv, 2 * self.space.n + 1
        return all(not any(k[:cut]) and not any(k[nv:nv + cut]) for k in self.terms)

    # -- text / json -------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.space.var_names()
        nv = self.space.nv
        out = []
        for k, c in self.items():
            factors = _fmt_mono(names, k[:nv]) + _fmt_mono(names, k[nv:], prefix="d")
            out.append(_fmt_coef_term(c, factors))
        return _join_terms(out)

    def __repr__(self):
        return f"WeylOp(n={self.space.n}, {self.space.picture}: {self})"

    @classmethod
    def parse(cls, space: VarSpace, text: str) -> "WeylOp":
        index = {name: i for i, name in enumerate(space.var_names())}
        nv = space.nv
        out = cls.zero(space)
        for coef, factors in _split_terms(text):
            key = [0] * (2 * nv)
            for f in factors:
                m = _FACTOR.match(f)
                if not m:
                    raise ValueError(f"bad factor {f!r}")
                is_d, name, e = m.group(1), m.group(2), m.group(3)
                if name not in index:
                    # "d" may be part of nothing else; names never start with d
                    raise ValueError(f"unknown variable {name!r}")
                key[index[name] + (nv if is_d else 0)] += int(e or 1)
            out = out + WeylOp(space, {tuple(key): coef})
        return out

    def to_json(self) -> dict:
        nv = self.space.nv
        return {
            "n": self.space.n,
            "picture": self.space.picture,
            "terms": [[list(k[:nv]), list(k[nv:]), str(c)] for k, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "WeylOp":
        if isinstance(data, str):
            data = json.loads(data)
        space = VarSpace(data["n"], data["picture"])
        terms = {}
        for mult, deriv, c in data["terms"]:
            if len(mult) != space.nv or len(deriv) != space.nv:
                raise ValueError("exponent vector length mismatch")
            terms[tuple(mult) + tuple(deriv)] = parse_scalar(c)
        return cls(space, terms)


class PolyVec:
    """Sparse polynomial vector in C[x, y, z] (x) C[q]."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: dict | None = None):
        self.space = space
        self.terms = _clean(terms or {})

    @classmethod
    def monomial(cls, space, exps, coef=ONE) -> "PolyVec":
        exps = tuple(exps)
        if len(exps) != space.nv:
            raise ValueError("exponent vector length mismatch")
        return cls(space, {exps: GaussScalar.coerce(coef)})

    @classmethod
    def constant(cls, space, c=ONE) -> "PolyVec":
        return cls.monomial(space, (0,) * space.nv, c)

    @classmethod
    def from_coords(cls, space, basis, coords) -> "PolyVec":
        return cls(space, {b: c for b, c in zip(basis, coords) if c})

    def __add__(self, other):
        _check_same(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return PolyVec(self.space, out)

    def __neg__(self):
        return PolyVec(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PolyVec":
        c = GaussScalar.coerce(c)
        if not c:
            return PolyVec(self.space)
        return PolyVec(self.space, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PolyVec):
            return self.space == other.space and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def coeff(self, key) -> GaussScalar:
        return self.terms.get(tuple(key), ZERO)

    def homogeneities(self) -> set[int]:
        w = self.space.weights()
        return {sum(a * b for a, b in zip(w, k)) for k in self.terms}

    def q_degree(self) -> int:
        cut = 2 * self.space.n + 1
        return max((sum(k[cut:]) for k in self.terms), default=-1)

    def z_degree(self) -> int:
        iz = self.space.iz
        return max((k[iz] for k in self.terms), default=-1)

    def coords(self, index: dict) -> dict:
        """Coordinates w.r.t. a basis given as ``monomial -> position``."""
        return {index[k]: c for k, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.space.var_names()
        return _join_terms(_fmt_coef_term(c, _fmt_mono(names, k)) for k, c in self.items())

    def __repr__(self):
        return f"PolyVec(n={self.space.n}: {self})"

    @classmethod
    def parse(cls, space, text) -> "PolyVec":
        op = WeylOp.parse(space, text)
        nv = space.nv
        if any(any(k[nv:]) for k in op.terms):
            raise ValueError("polynomial vectors carry no derivatives")
        return cls(space, {k[:nv]: c for k, c in op.terms.items()})

    def to_json(self) -> dict:
        return {"n": self.space.n, "picture": self.space.picture,
                "terms": [[list(k), str(c)] for k, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "PolyVec":
        if isinstance(data, str):
            data = json.loads(data)
        space = VarSpace(data["n"], data["picture"])
        return cls(space, {tuple(k): parse_scalar(c) for k, c in data["terms"]})


def normal_mul(p: WeylOp, q: WeylOp) -> WeylOp:
    """Normal-ordered product ``p*q``."""
    _check_same(p, q)
    nv = p.space.nv
    mm = kernels.mono_mul
    out: dict = {}
    get = out.get
    for k1, c1 in p.terms.items():
        for k2, c2 in q.terms.items():
            c12 = c1 * c2
            for key, ic in mm(k1, k2, nv):
                val = c12 if ic == 1 else c12 * ic
                prev = get(key)
                out[key] = val if prev is None else prev + val
    return WeylOp(p.space, out)


def commutator(p: WeylOp, q: WeylOp) -> WeylOp:
    return normal_mul(p, q) - normal_mul(q, p)


def apply(op: WeylOp, vec: PolyVec) -> PolyVec:
    _check_same(op, vec)
    nv = op.space.nv
    ma = kernels.mono_apply
    out: dict = {}
    get = out.get
    for k, c in op.terms.items():
        for b, cb in vec.terms.items():
            r = ma(k, b, nv)
            if r is None:
                continue
            key, ic = r
            val = c * cb
            if ic != 1:
                val = val * ic
            prev = get(key)
            out[key] = val if prev is None else prev + val
    return PolyVec(op.space, out)


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree ``d`` in ``nvars`` variables, lex-descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def slice_basis(space: VarSpace, m: int, q_max: int, z_free: bool = False) -> list[tuple]:
    """Monomials of homogeneity ``m`` (x, y weight 1; z weight 2) with q-degree <= q_max.

    Order: ascending q-degree, then ascending z-degree, then lex-descending on
    the (x, y) exponents, then lex-descending on the q exponents.  So for n = 1,
    m = 2 this gives ``x1^2, x1*y1, y1^2, z`` and for m = 1, q_max = 1 it gives
    ``x1, y1, x1*q1, y1*q1``.  ``z_free`` drops every monomial containing z.
    """
    n = space.n
    out = []
    for qd in range(q_max + 1):
        qmonos = monomials_of_degree(n, qd)
        for k in range(m // 2 + 1):
            if z_free and k:
                break
            for xy in monomials_of_degree(2 * n, m - 2 * k):
                for qm in qmonos:
                    out.append(xy + (k,) + qm)
    return out
