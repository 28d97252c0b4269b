import pytest
from hypothesis import given

from contact_fmethod.reps import RepParams, pi_hat
from contact_fmethod.scalars import I, GaussScalar
from contact_fmethod.weyl import (FOURIER, GEOMETRIC, PolyVec, SpaceMismatchError, VarSpace,
                                  WeylOp, commutator, slice_basis)

from .strategies import SPACE, poly_vecs, weyl_ops

pytestmark = pytest.mark.usefixtures("backend")


def op(text, space=SPACE):
    return WeylOp.parse(space, text)


@given(weyl_ops(), weyl_ops(), weyl_ops())
def test_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(weyl_ops(), weyl_ops(), weyl_ops())
def test_jacobi(p, q, r):
    total = (commutator(p, commutator(q, r)) + commutator(q, commutator(r, p))
             + commutator(r, commutator(p, q)))
    assert not total


@given(weyl_ops(), weyl_ops(), poly_vecs())
def test_application_is_a_module_action(p, q, v):
    assert (p * q)(v) == p(q(v))


@given(weyl_ops())
def test_text_and_json_roundtrip(p):
    assert WeylOp.parse(SPACE, str(p)) == p
    assert WeylOp.from_json(p.to_json()) == p


@given(poly_vecs())
def test_polyvec_roundtrip(v):
    assert PolyVec.parse(SPACE, str(v)) == v
    assert PolyVec.from_json(v.to_json()) == v


def test_canonical_commutator():
    assert commutator(op("dx1"), op("x1")) == WeylOp.scalar(SPACE, 1)


def test_leibniz_example():
    assert op("z*dx1") * op("x1*dz") == op("z*dz + z*x1*dx1*dz")


def test_ds_on_x_q():
    D = op("(1*i)*q1*dy1 - dx1*dq1")
    assert D(PolyVec.parse(SPACE, "x1*q1")) == PolyVec.constant(SPACE, -1)


def test_pi_hat_c_on_one():
    rep = pi_hat(RepParams(1, GaussScalar(0)))
    assert rep("c")(PolyVec.constant(SPACE)) == PolyVec.parse(SPACE, "-z")


def test_slice_basis_examples():
    assert len(slice_basis(SPACE, 1, 1)) == 4
    got = {str(PolyVec.monomial(SPACE, k)) for k in slice_basis(SPACE, 2, 0)}
    assert got == {"x1^2", "x1*y1", "y1^2", "z"}


def test_slice_basis_homogeneous():
    space = VarSpace(2, FOURIER)
    for k in slice_basis(space, 3, 2):
        v = PolyVec.monomial(space, k)
        assert v.homogeneities() == {3} and v.q_degree() <= 2


def test_space_mismatch():
    with pytest.raises(SpaceMismatchError):
        op("x1") * WeylOp.var(VarSpace(1, GEOMETRIC), 0)


def test_geometric_names():
    assert VarSpace(2, GEOMETRIC).var_names() == ["xh1", "xh2", "yh1", "yh2", "zh", "q1", "q2"]


def test_scalar_identities():
    p = op("(1/2)*x1*dq1 + i*z")
    assert p * 1 == p
    assert (p - p).terms == {}
    assert p.scale(I).scale(-I) == p
