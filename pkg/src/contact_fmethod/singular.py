"""Singular vectors in C[x, y, z] (x) C[q] and their classification.

A singular vector is a polynomial killed by every ``pi_hat(d_i)`` and
``pi_hat(e_i)``.  Kernels are computed exactly on homogeneity slices truncated
to q-degree ``<= q_max``; the operators raise q-degree by at most two, so the
images are evaluated without truncation.

Two parameters are in play.  ``pi_hat`` and :func:`kernel_search` use the
realization parameter ``Lam``; the classification table is stated for the
inducing weight ``lam`` of the Verma module, and ``Lam = lam + n + 1``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .fischer import build_sl2_ops, mm_basis
from .linalg import in_span, nullspace_columns, rref
from .reps import RepParams, pi_hat
from .scalars import I, ONE, ZERO, GaussScalar, gen_binomial
from .weyl import FOURIER, PolyVec, VarSpace, WeylOp, monomials_of_degree, slice_basis

__all__ = [
    "candidate_vector", "kernel_search", "KernelSlice", "lambda_candidates", "t_coefficients", "t_operator",
    "recurrence_verify", "general_recurrence_verify", "theorem_row", "lemma_pieces",
    "predicted_generators", "classify", "SingularReport", "annihilates",
]


# ---------------------------------------------------------------------------
# kernel search
# ---------------------------------------------------------------------------

@dataclass
class KernelSlice:
    lam: GaussScalar
    n: int
    m: int
    q_max: int
    monomials: list
    vectors: list  # PolyVec, RREF in slice order

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coords(self, vec: PolyVec):
        """Coordinates of ``vec`` in the slice, or None if it leaves the slice."""
        index = {k: j for j, k in enumerate(self.monomials)}
        out = {}
        for k, c in vec.terms.items():
            j = index.get(k)
            if j is None:
                return None
            out[j] = c
        return out

    def contains(self, vec: PolyVec) -> bool:
        c = self.coords(vec)
        if c is None:
            return False
        basis = [{j: cc for j, cc in self.coords(v).items()} for v in self.vectors]
        return in_span(c, basis)


def _nil_ops(params: RepParams):
    rep = pi_hat(params)
    n = params.n
    return [rep(f"d{i}") for i in range(1, n + 1)] + [rep(f"e{i}") for i in range(1, n + 1)], rep


def annihilates(params: RepParams, vec: PolyVec, include_a: bool = True) -> bool:
    ops, rep = _nil_ops(params)
    if include_a:
        ops = ops + [rep("a")]
    return all(not op(vec) for op in ops)


def kernel_search(params: RepParams, m: int, q_max: int) -> KernelSlice:
    """Exact common kernel of pi_hat(d_i), pi_hat(e_i) on the (m, q <= q_max) slice."""
    space = VarSpace(params.n, FOURIER)
    ops, rep = _nil_ops(params)
    monos = slice_basis(space, m, q_max)
    cols = []
    for b in monos:
        v = PolyVec.monomial(space, b)
        col = {}
        for t, op in enumerate(ops):
            for k, c in op(v).terms.items():
                col[(t, k)] = c
        cols.append(col)
    kern = nullspace_columns(cols)
    vecs = [PolyVec(space, {monos[j]: c for j, c in k.items()}) for k in kern]
    a_op = rep("a")
    for v in vecs:
        if a_op(v):
            raise AssertionError("kernel vector not annihilated by pi_hat(a)")
    return KernelSlice(params.lam, params.n, m, q_max, monos, vecs)


# ---------------------------------------------------------------------------
# lambda conditions, T operator, recurrences
# ---------------------------------------------------------------------------

def lambda_candidates(m: int, r: int, n: int):
    """The parameter forced by a singular vector of shape z^k X_s^(r-2k) v_m."""
    if m == 0 and r == 0:
        return "all"
    return GaussScalar(Fraction((m + r) ** 2 + m * (m + 2 * n - 1), 2 * (m + r)))


@lru_cache(maxsize=None)
def t_coefficients(n: int, a: int, printed: bool = False) -> tuple:
    """Coefficients ``a_k`` of ``T^n_a``, normalized by ``a_0 = 1``.

    The recurrence ``2(k+1) a_{k+1} = (i/4)(a-2k)(a-2k-1)(2n+a-2k-1) a_k``
    solves to ``i^k (k!)^2 C(a/2,k) C(a/2-1/2,k) C(a/2-1/2+n,k)``.  The variant
    with a single ``k!`` (``printed=True``) agrees only for k <= 1 and does
    not give singular vectors from a = 4 on; it is kept for comparison.
    """
    half = Fraction(a, 2)
    out = []
    for k in range(a // 2 + 1):
        c = (factorial(k) * gen_binomial(half, k) * gen_binomial(half - Fraction(1, 2), k)
             * gen_binomial(half - Fraction(1, 2) + n, k))
        if not printed:
            c *= factorial(k)
        out.append(GaussScalar(c) * I ** k)
    return tuple(out)


def _x_powers(n, top):
    _, _, X = build_sl2_ops(n)
    pw = [WeylOp.scalar(X.space, 1)]
    for _ in range(top):
        pw.append(pw[-1] * X)
    return pw


@lru_cache(maxsize=None)
def t_operator(n: int, a: int) -> WeylOp:
    """``T^n_a = sum_k a_k z^k X_s^(a-2k)`` in normal form (see :func:`t_coefficients`)."""
    if a < 1:
        raise ValueError("a must be positive")
    space = VarSpace(n, FOURIER)
    pw = _x_powers(n, a)
    z = WeylOp.var(space, space.iz)
    out = WeylOp.zero(space)
    for k, ak in enumerate(t_coefficients(n, a)):
        out = out + (z ** k * pw[a - 2 * k]).scale(ak)
    return out


def recurrence_verify(n: int, r: int, coeffs) -> bool:
    """``2(k+1) a_{k+1} = (i/4)(r-2k)(r-2k-1)(2n+r-2k-1) a_k`` for all k."""
    coeffs = [GaussScalar.coerce(c) for c in coeffs]
    if len(coeffs) != r // 2 + 1:
        raise ValueError("need floor(r/2)+1 coefficients")
    quarter_i = GaussScalar(0, Fraction(1, 4))
    for k in range(len(coeffs)):
        nxt = coeffs[k + 1] if k + 1 < len(coeffs) else ZERO
        lhs = nxt * (2 * (k + 1)) - quarter_i * ((r - 2 * k) * (r - 2 * k - 1) * (2 * n + r - 2 * k - 1)) * coeffs[k]
        if lhs:
            return False
    return True


def general_recurrence_verify(n: int, m: int, r: int, lam, coeffs) -> bool:
    """Both recurrences for ``R = sum_k a_k z^k X_s^(r-2k) v_m`` at realization parameter ``lam``."""
    lam = GaussScalar.coerce(lam)
    coeffs = [GaussScalar.coerce(c) for c in coeffs]
    if len(coeffs) != r // 2 + 1:
        raise ValueError("need floor(r/2)+1 coefficients")
    half = Fraction(1, 2)
    quarter_i = GaussScalar(0, Fraction(1, 4))
    for k, ak in enumerate(coeffs):
        first = ((r - 2 * k + m) * (-lam + (r - k + m + n - half))
                 - half * (r - 2 * k) * (2 * m + 2 * n + r - 2 * k - 1)) * ak
        if first:
            return False
        nxt = coeffs[k + 1] if k + 1 < len(coeffs) else ZERO
        second = (nxt * (2 * (k + 1) * (2 * n + m + r - 2 * k - 2))
                  - quarter_i * ((r - 2 * k) * (r - 2 * k - 1) * (2 * m + 2 * n + r - 2 * k - 1)
                                 * (2 * m + 2 * n + r - 2 * k - 2)) * ak)
        if second:
            return False
    return True


def candidate_vector(n: int, r: int, coeffs, v: PolyVec) -> PolyVec:
    """``sum_k a_k z^k X_s^(r-2k) v``."""
    space = v.space
    pw = _x_powers(n, r)
    z = WeylOp.var(space, space.iz)
    out = PolyVec(space)
    for k, ak in enumerate(coeffs):
        out = out + (z ** k * pw[r - 2 * k])(v).scale(ak)
    return out


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _nat0(x: GaussScalar):
    """``x`` as a non-negative integer, or None."""
    if x.im or x.re.denominator != 1 or x.re < 0:
        return None
    return int(x.re)


def _pos(x: GaussScalar):
    v = _nat0(x)
    return v if v else None


CASES = ("generic_M0_only", "integer_case_T", "half_integer_case_T",
         "half_integer_case_M_and_X", "n1_full_case")


def theorem_row(n: int, lam) -> tuple[int, str, list]:
    """Row of the classification table containing ``lam`` (Verma-module weight).

    Returns ``(row, case, pieces)`` where pieces are ``("M0",)``, ``("T", r)``,
    ``("M", m)`` or ``("XM", m)``.  Rows are tested exactly as printed; more
    than one hit is an error.
    """
    lam = GaussScalar.coerce(lam)
    half = Fraction(1, 2)
    hits = []
    if n == 1:
        if _pos((lam + 2) * 2) is None:
            hits.append((1, "generic_M0_only", [("M0",)]))
        if _nat0(lam + 1) is not None:
            hits.append((2, "integer_case_T", [("M0",), ("T", _pos((lam + 2) * 2))]))
        if lam == GaussScalar(Fraction(-3, 2)):
            hits.append((3, "half_integer_case_T", [("M0",), ("T", _pos((lam + 2) * 2))]))
        if _nat0(lam + half) is not None:
            m = _nat0(lam + Fraction(3, 2))
            hits.append((4, "n1_full_case",
                         [("M0",), ("M", m), ("XM", m), ("T", _pos((lam + 2) * 2))]))
    else:
        if _pos((lam + n + 1) * 2) is None:
            hits.append((1, "generic_M0_only", [("M0",)]))
        if _nat0(lam + n) is not None:
            hits.append((2, "integer_case_T", [("M0",), ("T", _pos((lam + n + 1) * 2))]))
        if _nat0(lam + n + half) is not None and _nat0(lam + half) is None:
            hits.append((3, "half_integer_case_T", [("M0",), ("T", _pos((lam + n + 1) * 2))]))
        if _nat0(lam + half) is not None:
            m = _nat0(lam + Fraction(3, 2))
            hits.append((4, "half_integer_case_M_and_X",
                         [("M0",), ("M", m), ("T", _pos((lam + n + 1) * 2))]))
    if len(hits) != 1:
        raise AssertionError(f"classification rows overlap or miss for lam={lam}: {hits}")
    return hits[0]


def lemma_pieces(n: int, Lam) -> list:
    """Pieces predicted by inverting the four case conditions at realization parameter ``Lam``."""
    Lam = GaussScalar.coerce(Lam)
    half = Fraction(1, 2)
    out = [("M0",)]
    m3 = _pos(Lam - n + half)
    if m3 is not None:
        out.append(("M", m3))
    if n == 1:
        m4 = _pos(Lam - half)
        if m4 is not None:
            out.append(("XM", m4))
    r = _pos(Lam * 2)
    if r is not None:
        out.append(("T", r))
    return out


def _piece_degree(piece) -> int:
    kind = piece[0]
    if kind == "M0":
        return 0
    if kind == "T":
        return piece[1]
    if kind == "M":
        return piece[1]
    return piece[1] + 1


def predicted_generators(n: int, piece, q_max: int) -> list[PolyVec]:
    """Spanning set of the piece intersected with the q-degree box."""
    space = VarSpace(n, FOURIER)
    kind = piece[0]
    nv = space.nv
    cut = 2 * n + 1

    def qmono(g):
        return PolyVec.monomial(space, (0,) * cut + g)

    if kind == "M0":
        return [qmono(g) for d in range(q_max + 1) for g in monomials_of_degree(n, d)]
    if kind == "T":
        r = piece[1]
        T = t_operator(n, r)
        return [T(qmono(g)) for d in range(q_max - r + 1) for g in monomials_of_degree(n, d)]
    if kind == "M":
        return list(mm_basis(n, piece[1], q_max).basis)
    if kind == "XM":
        if q_max < 1:
            return []
        _, _, X = build_sl2_ops(n)
        return [X(v) for v in mm_basis(n, piece[1], q_max - 1).basis]
    raise ValueError(piece)


def predicted_dim(n: int, piece, q_max: int) -> int:
    """Closed-form box dimension where one is available (M0, T); else the harmonic count."""
    kind = piece[0]
    if kind == "M0":
        return comb(q_max + n, n)
    if kind == "T":
        r = piece[1]
        return comb(q_max - r + n, n) if q_max >= r else 0
    if kind == "M":
        return mm_basis(n, piece[1], q_max).dim
    return mm_basis(n, piece[1], q_max - 1).dim if q_max >= 1 else 0


@dataclass
class BoxResult:
    m: int
    q_max: int
    kernel_dim: int
    predicted_dim: int
    pieces: list
    generators_in_kernel: bool
    generator_rank: int
    match: bool
    witness: bool = False

    def to_json(self):
        return {
            "m": self.m, "q_max": self.q_max, "kernel_dim": self.kernel_dim,
            "predicted_dim": self.predicted_dim,
            "pieces": [list(p) for p in self.pieces],
            "generators_in_kernel": self.generators_in_kernel,
            "generator_rank": self.generator_rank, "match": self.match,
            "witness_box": self.witness,
        }


@dataclass
class SingularReport:
    n: int
    lam: GaussScalar
    realization_lam: GaussScalar
    m_max: int
    q_max: int
    row: int
    classification_case: str
    pieces: list
    lemma_pieces: list
    boxes: list = field(default_factory=list)
    found_generators: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def match(self) -> bool:
        return (sorted(self.pieces) == sorted(self.lemma_pieces)
                and all(b.match for b in self.boxes))

    def to_json(self, timing: bool = False) -> dict:
        return {
            "n": self.n,
            "lambda": str(self.lam),
            "realization_lambda": str(self.realization_lam),
            "m_max": self.m_max,
            "q_max": self.q_max,
            "table": "n=1" if self.n == 1 else "n>=2",
            "row": self.row,
            "classification_case": self.classification_case,
            "pieces": [list(p) for p in self.pieces],
            "lemma_pieces": [list(p) for p in self.lemma_pieces],
            "boxes": [b.to_json() for b in self.boxes],
            "found_generators": self.found_generators,
            "match": self.match,
            "completeness": "box-relative",
            "timing_ms": round(self.seconds * 1000) if timing else 0,
        }


def _check_box(params, m, q_max, pieces, witness=False):
    n = params.n
    ks = kernel_search(params, m, q_max)
    here = [p for p in pieces if _piece_degree(p) == m]
    gens = []
    for p in here:
        gens.extend(predicted_generators(n, p, q_max))
    pred = sum(predicted_dim(n, p, q_max) for p in here)
    coords = [ks.coords(g) for g in gens]
    inside = all(c is not None for c in coords)
    rank = len(rref([c for c in coords if c])) if inside else -1
    member = inside and all(ks.contains(g) for g in gens)
    ok = member and rank == pred == ks.dim
    return BoxResult(m, q_max, ks.dim, pred, here, member, rank, ok, witness), ks


def classify(n: int, lam, m_max: int, q_max: int, witness: bool = True,
             max_generators: int = 8) -> SingularReport:
    """Scan boxes ``m <= m_max``, ``q <= q_max`` and compare with the classification table.

    ``lam`` is the Verma-module weight; the search runs at ``lam + n + 1``.
    With ``witness`` set, a T-piece whose degree fits in ``m_max`` but needs
    more q-degree than ``q_max`` gets one extra box ``(r, r)`` so that its
    generator is actually observed.
    """
    t0 = time.perf_counter()
    lam = GaussScalar.coerce(lam)
    Lam = lam + (n + 1)
    row, case, pieces = theorem_row(n, lam)
    params = RepParams(n, Lam)
    report = SingularReport(n, lam, Lam, m_max, q_max, row, case, pieces, lemma_pieces(n, Lam))
    for m in range(m_max + 1):
        box, ks = _check_box(params, m, q_max, pieces)
        report.boxes.append(box)
        for v in ks.vectors:
            if len(report.found_generators) < max_generators and m > 0:
                report.found_generators.append({"m": m, "vector": str(v)})
    if witness:
        for p in pieces:
            if p[0] == "T" and q_max < p[1] <= m_max:
                box, _ = _check_box(params, p[1], p[1], pieces, witness=True)
                report.boxes.append(box)
    report.seconds = time.perf_counter() - t0
    return report
