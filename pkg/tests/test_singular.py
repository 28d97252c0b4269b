from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from contact_fmethod.fischer import build_sl2_ops, mm_basis
from contact_fmethod.liealg import basis
from contact_fmethod.reps import RepParams, pi_hat
from contact_fmethod.scalars import GaussScalar
from contact_fmethod.singular import (CASES, annihilates, classify, general_recurrence_verify,
                                      kernel_search, lambda_candidates, recurrence_verify,
                                      t_coefficients, t_operator, theorem_row)
from contact_fmethod.weyl import FOURIER, PolyVec, VarSpace, WeylOp

pytestmark = pytest.mark.usefixtures("backend")

S1 = VarSpace(1, FOURIER)


def G(x):
    return GaussScalar(Fraction(x))


def test_generic_kernel():
    p = RepParams(1, G("1/3"))
    assert kernel_search(p, 0, 3).dim == 4
    assert kernel_search(p, 1, 3).dim == 0


def test_harmonic_vector_is_singular():
    p = RepParams(1, G("3/2"))
    x1 = PolyVec.parse(S1, "x1")
    assert annihilates(p, x1)
    assert kernel_search(p, 1, 2).contains(x1)
    assert not annihilates(RepParams(1, G("1/2")), x1)


def test_lambda_candidates():
    assert lambda_candidates(0, 2, 1) == 1
    assert lambda_candidates(1, 0, 1) == G("3/2")
    assert lambda_candidates(0, 0, 3) == "all"


def test_t_operator_small():
    D, E, X = build_sl2_ops(1)
    z = WeylOp.var(S1, S1.iz)
    assert t_operator(1, 2) == X * X + z.scale(GaussScalar(0, Fraction(3, 4)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_t_z_coefficient(n):
    assert t_coefficients(n, 2)[1] == GaussScalar(0, Fraction(2 * n + 1, 4))


def test_t_coefficients_frozen():
    assert [str(c) for c in t_coefficients(1, 4)] == ["1", "15/2*i", "-45/16"]



@pytest.mark.parametrize("n,a", [(1, 7), (2, 6), (3, 9)])
def test_t_coefficients_match_recurrence_oracle(n, a):
    # unroll 2(k+1) a_{k+1} = (i/4)(a-2k)(a-2k-1)(2n+a-2k-1) a_k from a_0 = 1
    coeffs = [GaussScalar(1)]
    for k in range(a // 2):
        step = GaussScalar(0, Fraction((a - 2 * k) * (a - 2 * k - 1) * (2 * n + a - 2 * k - 1), 8 * (k + 1)))
        coeffs.append(coeffs[-1] * step)
    assert list(t_coefficients(n, a)) == coeffs


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("a", range(1, 11))
def test_recurrence(n, a):
    assert recurrence_verify(n, a, t_coefficients(n, a))
    assert general_recurrence_verify(n, 0, a, Fraction(a, 2), t_coefficients(n, a))


@pytest.mark.parametrize("n", [1, 2])
def test_printed_closed_form_breaks_from_a4(n):
    # the closed form with a single factorial only agrees for a <= 3
    for a in (1, 2, 3):
        assert t_coefficients(n, a, printed=True) == t_coefficients(n, a)
    printed = t_coefficients(n, 4, printed=True)
    assert printed != t_coefficients(n, 4)
    assert not recurrence_verify(n, 4, printed)


@pytest.mark.parametrize("n,a", [(1, 1), (1, 2), (1, 5), (2, 3), (2, 4), (3, 2)])
def test_t_image_is_singular(n, a):
    p = RepParams(n, G(Fraction(a, 2)))
    T = t_operator(n, a)
    for v in mm_basis(n, 0, 3).basis:
        assert annihilates(p, T(v))


def test_recurrence_length_checked():
    with pytest.raises(ValueError):
        recurrence_verify(1, 4, [1, 2])


REPRESENTATIVES = [
    (1, "1/3", "generic_M0_only", [("M0",)]),
    (1, "0", "integer_case_T", [("M0",), ("T", 4)]),
    (1, "-3/2", "half_integer_case_T", [("M0",), ("T", 1)]),
    (1, "-1/2", "n1_full_case", [("M0",), ("M", 1), ("XM", 1), ("T", 3)]),
    (1, "1/2", "n1_full_case", [("M0",), ("M", 2), ("XM", 2), ("T", 5)]),
    (2, "1/7", "generic_M0_only", [("M0",)]),
    (2, "-1", "integer_case_T", [("M0",), ("T", 4)]),
    (2, "-3/2", "half_integer_case_T", [("M0",), ("T", 3)]),
    (2, "-1/2", "half_integer_case_M_and_X", [("M0",), ("M", 1), ("T", 5)]),
    (2, "1/2", "half_integer_case_M_and_X", [("M0",), ("M", 2), ("T", 7)]),
]


@pytest.mark.parametrize("n,lam,case,pieces", REPRESENTATIVES)
def test_classification(n, lam, case, pieces):
    rep = classify(n, G(lam), 3, 2)
    assert rep.classification_case == case
    assert rep.pieces == pieces
    assert rep.match
    assert case in CASES


def test_report_is_stable():
    a = classify(1, G("1/2"), 3, 2).to_json()
    b = classify(1, G("1/2"), 3, 2).to_json()
    assert a == b and a["timing_ms"] == 0


def test_theorem_row_is_unique():
    for x in [Fraction(k, 4) for k in range(-12, 12)]:
        row, case, _ = theorem_row(1, x)
        assert case in CASES


@settings(max_examples=8)
@given(st.builds(Fraction, st.integers(-200, 200), st.sampled_from([7, 11, 13])))
def test_negative_control(x):
    p = RepParams(1, GaussScalar(x))
    for m in range(1, 4):
        assert kernel_search(p, m, 2).dim == 0


def test_levi_closure():
    # h_{A,B,C} preserve singular vectors; h_C raises q-degree by two
    p = RepParams(1, G("5/2"))
    small, big = kernel_search(p, 2, 2), kernel_search(p, 2, 4)
    rep = pi_hat(p)
    for X in basis(1):
        if X.tag in ("h", "hA", "hB", "hC"):
            for v in small.vectors:
                assert big.contains(rep(X)(v))
