import pytest
import sympy
from hypothesis import given, strategies as st

from contact_fmethod.linalg import connected_components, in_span, nullspace_columns, rref
from contact_fmethod.scalars import GaussScalar

from .strategies import coefs

pytestmark = pytest.mark.usefixtures("backend")

columns = st.lists(st.dictionaries(st.integers(0, 4), coefs, max_size=3), min_size=1, max_size=6)


def _to_sympy(c):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def _sympy_rank(cols):
    rows = sorted({r for c in cols for r in c})
    if not rows:
        return 0
    M = sympy.Matrix([[_to_sympy(c[r]) if r in c else 0 for c in cols] for r in rows])
    return M.rank()


def _apply(cols, vec):
    out = {}
    for j, x in vec.items():
        for r, c in cols[j].items():
            out[r] = out.get(r, GaussScalar(0)) + c * x
    return {r: c for r, c in out.items() if c}


@given(columns)
def test_kernel_vectors_are_in_kernel(cols):
    for v in nullspace_columns(cols):
        assert not _apply(cols, v)


@given(columns)
def test_kernel_dimension_matches_sympy_rank(cols):
    assert len(nullspace_columns(cols)) == len(cols) - _sympy_rank(cols)


@given(columns)
def test_kernel_basis_is_canonical(cols):
    kern = nullspace_columns(cols)
    assert kern == rref(kern)
    for v in kern:
        assert v[min(v)] == 1


@given(columns)
def test_kernel_independent_of_backend_order(cols):
    # the RREF basis is unique, so a permuted computation agrees after re-reduction
    kern = nullspace_columns(cols)
    assert rref(list(reversed(kern))) == kern


def test_components():
    cols = [{"a": 1}, {"b": 1}, {"a": 2, "c": 1}, {}]
    assert connected_components(cols) == [[0, 2], [1], [3]]


def test_in_span():
    basis = rref([{0: GaussScalar(1), 1: GaussScalar(2)}, {1: GaussScalar(1)}])
    assert in_span({1: GaussScalar(0, 5)}, basis)
    assert not in_span({2: GaussScalar(1)}, basis)
