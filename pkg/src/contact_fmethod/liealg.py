"""sp(2n+2, C) in its contact grading, and U(ubar) (x) End(S) in PBW form.

Matrices use the block layout ``(1, n, 1, n)`` for rows and columns, with the
symplectic form ``J = [[0, I], [-I, 0]]``.  Basis elements are named

    f1..fn, g1..gn, c          opposite nilradical (grades -1, -2)
    d1..dn, e1..en, a          nilradical (grades +1, +2)
    h                          centre of the Levi factor
    hA{i}{j}                   h_{E_ij, 0, 0}
    hB{i}{j}  (i <= j)         h_{0, E_ij + E_ji, 0}
    hC{i}{j}  (i <= j)         h_{0, 0, E_ij + E_ji}

For n >= 10 the two indices are separated by an underscore (``hA10_3``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from . import kernels
from .scalars import ONE, ZERO, GaussScalar

__all__ = [
    "BasisElem", "basis", "basis_by_name", "bracket_matrix", "bracket_names", "grade",
    "InternalConsistencyError", "UbarElem", "heisenberg_normal_form",
    "symmetrize_beta", "symmetrize_beta_bruteforce",
]


class InternalConsistencyError(RuntimeError):
    """A bracket left the span of the fixed basis."""


def _pair(i, j, n):
    return f"{i}{j}" if n < 10 else f"{i}_{j}"


@dataclass(frozen=True)
class BasisElem:
    name: str
    tag: str
    idx: tuple
    n: int

    @property
    def matrix(self):
        return _matrix(self.n, self.name)

    def __str__(self):
        return self.name


def _zero(N):
    return [[0] * N for _ in range(N)]


@lru_cache(maxsize=None)
def _basis_list(n):
    out = []
    out += [BasisElem(f"f{i}", "f", (i,), n) for i in range(1, n + 1)]
    out += [BasisElem(f"g{i}", "g", (i,), n) for i in range(1, n + 1)]
    out.append(BasisElem("c", "c", (), n))
    out += [BasisElem(f"d{i}", "d", (i,), n) for i in range(1, n + 1)]
    out += [BasisElem(f"e{i}", "e", (i,), n) for i in range(1, n + 1)]
    out.append(BasisElem("a", "a", (), n))
    out.append(BasisElem("h", "h", (), n))
    out += [BasisElem(f"hA{_pair(i, j, n)}", "hA", (i, j), n)
            for i in range(1, n + 1) for j in range(1, n + 1)]
    out += [BasisElem(f"hB{_pair(i, j, n)}", "hB", (i, j), n)
            for i in range(1, n + 1) for j in range(i, n + 1)]
    out += [BasisElem(f"hC{_pair(i, j, n)}", "hC", (i, j), n)
            for i in range(1, n + 1) for j in range(i, n + 1)]
    return tuple(out)


def basis(n: int) -> tuple[BasisElem, ...]:
    """The ordered basis of sp(2n+2); its length is (n+1)(2n+3)."""
    if n < 1:
        raise ValueError("n must be positive")
    return _basis_list(n)


@lru_cache(maxsize=None)
def _name_index(n):
    return {b.name: b for b in _basis_list(n)}


def basis_by_name(n: int, name: str) -> BasisElem:
    try:
        return _name_index(n)[name]
    except KeyError:
        raise KeyError(f"unknown basis element {name!r} for n={n}") from None


def grade(elem: BasisElem) -> int:
    return {"f": -1, "g": -1, "c": -2, "d": 1, "e": 1, "a": 2}.get(elem.tag, 0)


@lru_cache(maxsize=None)
def _matrix(n, name):
    b = _name_index(n)[name]
    N = 2 * n + 2
    M = _zero(N)
    r2 = n + 1          # index of the second 1x1 block
    r3 = n + 1          # offset of the third block (rows r3+1..r3+n)
    t, idx = b.tag, b.idx
    if t == "f":
        i, = idx
        M[i][0] = 1
        M[r2][r3 + i] = -1
    elif t == "g":
        i, = idx
        M[r2][i] = 1
        M[r3 + i][0] = 1
    elif t == "c":
        M[r2][0] = 2
    elif t == "d":
        i, = idx
        M[0][i] = 1
        M[r3 + i][r2] = -1
    elif t == "e":
        i, = idx
        M[0][r3 + i] = 1
        M[i][r2] = 1
    elif t == "a":
        M[0][r2] = 2
    elif t == "h":
        M[0][0] = 1
        M[r2][r2] = -1
    elif t == "hA":
        i, j = idx
        M[i][j] += 1
        M[r3 + j][r3 + i] -= 1
    elif t == "hB":
        i, j = idx
        M[i][r3 + j] += 1
        M[j][r3 + i] += 1
    elif t == "hC":
        i, j = idx
        M[r3 + i][j] += 1
        M[r3 + j][i] += 1
    return tuple(tuple(row) for row in M)


def _matmul(A, B):
    N = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(N) if A[i][k] and B[k][j]) for j in range(N)]
            for i in range(N)]


def is_symplectic_algebra_element(M) -> bool:
    """Check X^T J + J X = 0."""
    N = len(M)
    h = N // 2
    J = [[0] * N for _ in range(N)]
    for i in range(h):
        J[i][h + i] = 1
        J[h + i][i] = -1
    MT = [list(col) for col in zip(*M)]
    A = _matmul(MT, J)
    B = _matmul(J, M)
    return all(A[i][j] + B[i][j] == 0 for i in range(N) for j in range(N))


def coordinates(n: int, M) -> dict[str, Fraction]:
    """Expand a matrix of sp(2n+2) in the fixed basis; raises if it is not in the span."""
    r2 = r3 = n + 1
    out: dict[str, Fraction] = {}

    def put(name, v):
        if v:
            out[name] = Fraction(v)

    for i in range(1, n + 1):
        put(f"f{i}", M[i][0])
    for i in range(1, n + 1):
        put(f"g{i}", M[r3 + i][0])
    put("c", Fraction(M[r2][0]) / 2)
    for i in range(1, n + 1):
        put(f"d{i}", M[0][i])
    for i in range(1, n + 1):
        put(f"e{i}", M[0][r3 + i])
    put("a", Fraction(M[0][r2]) / 2)
    put("h", M[0][0])
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            put(f"hA{_pair(i, j, n)}", M[i][j])
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            put(f"hB{_pair(i, j, n)}", M[i][r3 + j] if i != j else Fraction(M[i][r3 + i]) / 2)
            put(f"hC{_pair(i, j, n)}", M[r3 + i][j] if i != j else Fraction(M[r3 + i][i]) / 2)
    # the expansion must reproduce M exactly
    N = 2 * n + 2
    R = [[Fraction(0)] * N for _ in range(N)]
    for name, v in out.items():
        B = _matrix(n, name)
        for i in range(N):
            for j in range(N):
                if B[i][j]:
                    R[i][j] += v * B[i][j]
    if any(R[i][j] != M[i][j] for i in range(N) for j in range(N)):
        raise InternalConsistencyError("matrix outside the span of the basis")
    return out


def bracket_matrix(X: BasisElem, Y: BasisElem) -> dict[str, Fraction]:
    """``[X, Y] = XY - YX`` expanded in basis coordinates (name -> coefficient)."""
    if X.n != Y.n:
        raise ValueError("basis elements of different rank")
    return dict(_bracket_cached(X.n, X.name, Y.name))


@lru_cache(maxsize=None)
def _bracket_cached(n, xn, yn):
    A, B = _matrix(n, xn), _matrix(n, yn)
    AB, BA = _matmul(A, B), _matmul(B, A)
    N = len(A)
    M = [[AB[i][j] - BA[i][j] for j in range(N)] for i in range(N)]
    return tuple(sorted(coordinates(n, M).items()))


def bracket_names(n: int, x: str, y: str) -> dict[str, Fraction]:
    return bracket_matrix(basis_by_name(n, x), basis_by_name(n, y))


# ---------------------------------------------------------------------------
# U(ubar) (x) End(S)
# ---------------------------------------------------------------------------

class UbarElem:
    """Element of U(ubar) (x) End(S) in PBW normal form.

    A key is ``alpha + beta + (k,) + gamma + delta`` (lengths n, n, 1, n, n)
    standing for ``f^alpha g^beta c^k (x) q^gamma dq^delta`` with f before g
    before c, and q before dq.  The same keys also serve for the symmetric
    algebra S(ubar) (x) End(S) (see :meth:`sym_mul`).
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def scalar(cls, n, c):
        return cls(n, {(0,) * (4 * n + 1): GaussScalar.coerce(c)})

    @classmethod
    def monomial(cls, n, alpha=None, beta=None, k=0, gamma=None, delta=None, coef=ONE):
        z = (0,) * n
        key = (tuple(alpha or z) + tuple(beta or z) + (k,) + tuple(gamma or z) + tuple(delta or z))
        return cls(n, {key: GaussScalar.coerce(coef)})

    @classmethod
    def gen(cls, n, name: str) -> "UbarElem":
        """Single generator: ``f1``, ``g2``, ``c``, ``q1``, ``dq3``."""
        if name == "c":
            return cls.monomial(n, k=1)
        for prefix, slot in (("dq", 4), ("q", 3), ("f", 0), ("g", 1)):
            if name.startswith(prefix) and name[len(prefix):].isdigit():
                i = int(name[len(prefix):])
                if not 1 <= i <= n:
                    raise IndexError(name)
                parts = [[0] * n for _ in range(4)]
                parts[[0, 1, None, 2, 3][slot]][i - 1] = 1
                return cls.monomial(n, parts[0], parts[1], 0, parts[2], parts[3])
        raise ValueError(f"unknown generator {name!r}")

    def split(self, key):
        n = self.n
        return key[:n], key[n:2 * n], key[2 * n], key[2 * n + 1:3 * n + 1], key[3 * n + 1:]

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, UbarElem) or other.n != self.n:
            raise ValueError("UbarElem rank mismatch")

    def __add__(self, other):
        if not isinstance(other, UbarElem):
            other = UbarElem.scalar(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return UbarElem(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return UbarElem(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UbarElem):
            other = UbarElem.scalar(self.n, other)
        return self + (-other)

    def scale(self, c):
        c = GaussScalar.coerce(c)
        return UbarElem(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UbarElem):
            return self._product(other, commutative=False)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = UbarElem.scalar(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def sym_mul(self, other) -> "UbarElem":
        """Product in S(ubar) (x) End(S): ubar letters commute, End(S) parts compose."""
        self._check(other)
        return self._product(other, commutative=True)

    def sym_pow(self, k) -> "UbarElem":
        out = UbarElem.scalar(self.n, 1)
        for _ in range(k):
            out = out.sym_mul(self)
        return out

    def _product(self, other, commutative):
        self._check(other)
        n = self.n
        mm = kernels.mono_mul
        out: dict = {}
        for k1, c1 in self.terms.items():
            a1, b1, kc1, g1, d1 = self.split(k1)
            s1 = sum(a1)
            for k2, c2 in other.terms.items():
                a2, b2, kc2, g2, d2 = self.split(k2)
                c12 = c1 * c2
                if commutative:
                    heis = [(tuple(x + y for x, y in zip(a1, a2)) + tuple(x + y for x, y in zip(b1, b2)), 1)]
                else:
                    heis = mm(a1 + b1, a2 + b2, n)
                ends = mm(g1 + d1, g2 + d2, n)
                stot = s1 + sum(a2)
                for hk, hc in heis:
                    kc = kc1 + kc2 + stot - sum(hk[:n])
                    for ek, ec in ends:
                        key = hk + (kc,) + ek
                        val = c12 * (hc * ec)
                        prev = out.get(key)
                        out[key] = val if prev is None else prev + val
        return UbarElem(n, out)

    # -- inspection --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UbarElem):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def filtration_degree(self) -> int:
        """PBW degree counting each of f, g, c once."""
        n = self.n
        return max((sum(k[:2 * n + 1]) for k in self.terms), default=-1)

    def ubar_part_only(self) -> bool:
        n = self.n
        return all(not any(k[2 * n + 1:]) for k in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        n = self.n
        names = ([f"f{i}" for i in range(1, n + 1)] + [f"g{i}" for i in range(1, n + 1)] + ["c"]
                 + [f"q{i}" for i in range(1, n + 1)] + [f"dq{i}" for i in range(1, n + 1)])
        out = []
        for k, c in self.items():
            factors = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, k) if e]
            body = "*".join(factors)
            if not body:
                out.append(f"({c})")
            elif c == ONE:
                out.append(body)
            elif c == -ONE:
                out.append("-" + body)
            else:
                out.append(f"({c})*{body}")
        return " + ".join(out)

    def __repr__(self):
        return f"UbarElem(n={self.n}: {self})"


def heisenberg_normal_form(n: int, word) -> UbarElem:
    """PBW normal form of a word of generator names, e.g. ``["g1", "g1", "f1"]``."""
    out = UbarElem.scalar(n, 1)
    for letter in word:
        out = out * UbarElem.gen(n, letter)
    return out


@lru_cache(maxsize=None)
def _beta_single(a: int, b: int):
    """Symmetrization of f^a g^b for one index, as ``((a', b', j), Fraction)`` pairs."""
    total = a + b
    acc: dict = {}
    count = 0
    # every distinct arrangement of the multiset occurs a! b! times among the k! orderings
    for positions in _combinations(total, a):
        word = ["g"] * total
        for p in positions:
            word[p] = "f"
        elem = heisenberg_normal_form(1, [w + "1" for w in word])
        count += 1
        for key, c in elem.terms.items():
            acc[key] = acc.get(key, ZERO) + c
    out = []
    for key, c in sorted(acc.items()):
        if c:
            out.append(((key[0], key[1], key[2]), c / count))
    return tuple(out)


def _combinations(total, a):
    from itertools import combinations
    return combinations(range(total), a)


def symmetrize_beta(elem: UbarElem) -> UbarElem:
    """Apply the symmetrization map (beta (x) id) to an element of S(ubar) (x) End(S).

    Letters with different indices commute in U(ubar), so the
    average over all orderings factors into one average per index.
    """
    n = elem.n
    out = UbarElem.zero(n)
    for key, coef in elem.items():
        alpha, beta, k, gamma, delta = elem.split(key)
        partial = {(tuple(), tuple(), k): coef}
        for i in range(n):
            nxt: dict = {}
            for (pa, pb, pk), pc in partial.items():
                for (a2, b2, j), c2 in _beta_single(alpha[i], beta[i]):
                    kk = (pa + (a2,), pb + (b2,), pk + j)
                    nxt[kk] = nxt.get(kk, ZERO) + pc * c2
            partial = nxt
        terms = {pa + pb + (pk,) + gamma + delta: c for (pa, pb, pk), c in partial.items()}
        out = out + UbarElem(n, terms)
    return out


def symmetrize_beta_bruteforce(n: int, letters, end_s: UbarElem | None = None) -> UbarElem:
    """Literal (1/k!) sum over all k! orderings of the ubar letters; test oracle."""
    letters = list(letters)
    acc = UbarElem.zero(n)
    count = 0
    for perm in permutations(letters):
        acc = acc + heisenberg_normal_form(n, perm)
        count += 1
    acc = acc.scale(GaussScalar(Fraction(1, count)))
    if end_s is not None:
        acc = acc * end_s
    return acc
