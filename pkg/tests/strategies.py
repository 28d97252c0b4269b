"""Hypothesis strategies for small exact objects."""
from fractions import Fraction

from hypothesis import strategies as st

from contact_fmethod.scalars import GaussScalar
from contact_fmethod.weyl import FOURIER, PolyVec, VarSpace, WeylOp

SPACE = VarSpace(1, FOURIER)

small = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 2, 3]))
coefs = st.builds(GaussScalar, small, small).filter(bool)


def weyl_ops(space=SPACE, max_terms=3, max_exp=2):
    key = st.tuples(*[st.integers(0, max_exp)] * (2 * space.nv))
    return st.dictionaries(key, coefs, max_size=max_terms).map(lambda t: WeylOp(space, t))


def poly_vecs(space=SPACE, max_terms=3, max_exp=3):
    key = st.tuples(*[st.integers(0, max_exp)] * space.nv)
    return st.dictionaries(key, coefs, max_size=max_terms).map(lambda t: PolyVec(space, t))
