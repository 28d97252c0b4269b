import pytest
from hypothesis import given, strategies as st

from contact_fmethod import _kernels_py, kernels

compiled = pytest.mark.skipif("cython" not in kernels.available_backends(),
                              reason="compiled kernels not built")

NV = 3
exps = st.tuples(*[st.integers(0, 3)] * (2 * NV))
poly_exps = st.tuples(*[st.integers(0, 4)] * NV)
gauss = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(any)
rows = st.dictionaries(st.integers(0, 6), gauss, max_size=6)


def test_backend_switch_roundtrip():
    prev = kernels.BACKEND
    for name in kernels.available_backends():
        kernels.use_backend(name)
        assert kernels.BACKEND == name
    kernels.use_backend(prev)


def test_unknown_backend():
    with pytest.raises(KeyError):
        kernels.use_backend("fortran")


def test_mono_mul_leibniz():
    # d_x * x = x d_x + 1
    assert sorted(_kernels_py.mono_mul((0, 1), (1, 0), 1)) == [((0, 0), 1), ((1, 1), 1)]
    # d_x^2 * x^2 = x^2 d^2 + 4 x d + 2
    assert sorted(_kernels_py.mono_mul((0, 2), (2, 0), 1)) == [((0, 0), 2), ((1, 1), 4), ((2, 2), 1)]


def test_mono_apply_vanishing():
    assert _kernels_py.mono_apply((0, 2), (1,), 1) is None
    assert _kernels_py.mono_apply((1, 1), (3,), 1) == ((3,), 3)


@compiled
@given(exps, exps)
def test_mono_mul_agrees(k1, k2):
    from contact_fmethod import _kernels_c
    assert sorted(_kernels_c.mono_mul(k1, k2, NV)) == sorted(_kernels_py.mono_mul(k1, k2, NV))


@compiled
@given(exps, poly_exps)
def test_mono_apply_agrees(k, b):
    from contact_fmethod import _kernels_c
    assert _kernels_c.mono_apply(k, b, NV) == _kernels_py.mono_apply(k, b, NV)


@compiled
@given(st.lists(rows, min_size=1, max_size=5), rows)
def test_ff_reduce_agrees(pivot_rows, row):
    from contact_fmethod import _kernels_c
    pivots = {}
    for r in pivot_rows:
        red = _kernels_py.ff_reduce_row(r, pivots)
        if red:
            pivots[min(red)] = red
    assert _kernels_c.ff_reduce_row(row, pivots) == _kernels_py.ff_reduce_row(row, pivots)


@given(st.lists(rows, min_size=1, max_size=5), rows)
def test_ff_reduce_clears_pivot_columns(pivot_rows, row):
    pivots = {}
    for r in pivot_rows:
        red = _kernels_py.ff_reduce_row(r, pivots)
        if red:
            pivots[min(red)] = red
    red = _kernels_py.ff_reduce_row(row, pivots)
    if red:
        assert min(red) not in pivots
