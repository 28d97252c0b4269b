from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from contact_fmethod.liealg import basis
from contact_fmethod.reps import (Realization, RepParams, check_homomorphism, pi_geom, pi_hat, pi_hat_sigma,
                                  sl2_operators, ssw, ssw_dual, trivial_character)
from contact_fmethod.scalars import I, GaussScalar
from contact_fmethod.weyl import FOURIER, GEOMETRIC, VarSpace, WeylOp, commutator

pytestmark = pytest.mark.usefixtures("backend")

F1 = VarSpace(1, FOURIER)


def lam(x):
    return GaussScalar(Fraction(x))


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("factory", [
    lambda p: pi_hat(p),
    lambda p: pi_hat_sigma(p, ssw),
    lambda p: pi_geom(p, ssw),
    lambda p: pi_geom(p, ssw_dual),
], ids=["hat", "hat-ssw", "geom-ssw", "geom-ssw-dual"])
def test_realizations_are_homomorphisms(n, factory):
    rep = factory(RepParams(n, lam("1/3")))
    assert check_homomorphism(rep).ok


@settings(max_examples=10)
@given(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12)))
def test_pi_hat_homomorphism_any_lambda(x):
    assert check_homomorphism(pi_hat(RepParams(1, GaussScalar(x)))).ok


def test_closed_form_equals_sigma_twist():
    p = RepParams(2, lam("5/2"))
    a, b = pi_hat(p), pi_hat_sigma(p, ssw)
    for X in basis(2):
        assert a(X) == b(X)


def test_any_levi_module_gives_a_homomorphism():
    assert check_homomorphism(pi_hat_sigma(RepParams(1, lam(2)), trivial_character)).ok
    assert check_homomorphism(pi_geom(RepParams(1, lam(2)), trivial_character)).ok


def _broken():
    good = pi_hat(RepParams(1, lam(0)))
    shift = WeylOp.parse(F1, "z*dq1")
    return Realization(1, F1, lambda b: good(b) + shift if b.name == "g1" else good(b), "broken")


def test_defects_are_detected():
    report = check_homomorphism(_broken())
    assert not report.ok
    assert {"g1"} <= {x for pair in report.defects for x in pair[:2]}


def test_examples_fourier():
    rep = pi_hat(RepParams(1, lam(0)))
    assert rep("f1") == WeylOp.parse(F1, "-x1 - (1/2)*z*dy1")
    assert rep("c") == WeylOp.parse(F1, "-z")
    assert commutator(rep("f1"), rep("g1")) == WeylOp.parse(F1, "z")
    assert commutator(rep("d1"), rep("e1")) == rep("a")


def test_a_is_laplacian_plus_square():
    n, lmb = 2, 5
    space = VarSpace(n, FOURIER)
    D, E, _ = sl2_operators(space)
    z, dz = WeylOp.var(space, space.iz), WeylOp.d(space, space.iz)
    expect = (dz * (E + z * dz - WeylOp.scalar(space, lmb - n))).scale(4) + (D * D).scale(I)
    assert pi_hat(RepParams(n, lam(lmb)))("a") == expect


def test_examples_geometric():
    g = VarSpace(1, GEOMETRIC)
    rep = pi_geom(RepParams(1, lam(7)), ssw_dual)
    assert rep("c") == WeylOp.parse(g, "-dzh")
    assert rep("f1") == WeylOp.parse(g, "-dxh1 + (1/2)*yh1*dzh")
    assert rep("h") == WeylOp.parse(g, "xh1*dxh1 + yh1*dyh1 + 2*zh*dzh + 9")


def test_ssw_variants_are_conjugate_forms():
    s = VarSpace(1, FOURIER)
    assert ssw.op(s, "hB11") == ssw_dual.op(s, "hB11").scale(-1)
    assert ssw.op(s, "hA11") == ssw_dual.op(s, "hA11")


def test_defect_report_json():
    data = check_homomorphism(_broken()).to_json()
    assert data["pairs_checked"] == 45 and data["defects"]


def test_rejects_bad_rank():
    with pytest.raises(ValueError):
        RepParams(0, lam(0))
