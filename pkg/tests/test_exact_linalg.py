from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from koszulhh.exact_linalg import (
    Echelon,
    Field,
    Matrix,
    format_scalar,
    image_basis,
    kernel_basis,
    rank,
    reduce_mod_span,
    solve,
    span_equal,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small = st.integers(-3, 3).map(Fraction)


@st.composite
def matrices(draw, max_dim=5, entries=small):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return Matrix.from_dense([[draw(entries) for _ in range(c)] for _ in range(r)])


@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.ncols
    for v in ker:
        assert not m.apply(v)


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose()) == len(image_basis(m))


@given(matrices(entries=rationals), st.lists(rationals, min_size=5, max_size=5))
def test_reduce_mod_span_recombines(m, coeffs):
    basis = [m.to_dense(Fraction(0))[i] for i in range(m.nrows)]
    target = [sum(coeffs[i] * b[j] for i, b in enumerate(basis)) for j in range(m.ncols)]
    res = reduce_mod_span(target, basis)
    assert res.in_span
    recombined = [sum(res.coefficients[i] * b[j] for i, b in enumerate(basis)) for j in range(m.ncols)]
    assert recombined == target


def test_reduce_mod_span_residual_outside():
    res = reduce_mod_span([0, 0, 1], [[1, 0, 0], [0, 1, 0]])
    assert not res.in_span and res.residual == {2: 1}


def test_reduce_mod_span_dimension_mismatch():
    with pytest.raises(ValueError):
        reduce_mod_span([1, 2], [[1, 0, 0]])


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_finds_preimage(m, x):
    b = m.apply({j: x[j] for j in range(m.ncols) if x[j]})
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b


def test_echelon_tracking_reconstructs_inputs():
    vs = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    e = Echelon(track=True)
    added = [e.add(v, label=i) for i, v in enumerate(vs)]
    assert added == [True, True, False]
    r, combo = e.reduce(vs[2])
    assert not r and combo == {0: 1, 1: 1}


def test_span_equal_ignores_order_and_scaling():
    assert span_equal([{0: 1}, {1: 1}], [{0: 2, 1: 1}, {1: 3}])
    assert not span_equal([{0: 1}], [{1: 1}])


# number fields

cyclotomic6 = Field([1, -1, 1])  # t^2 - t + 1
elements = st.tuples(rationals, rationals).map(lambda c: cyclotomic6(c[0]) + c[1] * cyclotomic6.gen())


@given(elements, elements, elements)
def test_number_field_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(elements)
def test_number_field_inverse(a):
    if a:
        assert a * a.inverse() == cyclotomic6.one


def test_primitive_sixth_root():
    t = cyclotomic6.gen()
    assert t**6 == 1 and t**3 == -1 and t**2 != 1
    assert 1 / t == 1 - t


def test_field_requires_monic():
    with pytest.raises(ValueError):
        Field([1, 2])
    with pytest.raises(ValueError):
        Field([1, 1, 2])


def test_format_scalar():
    assert format_scalar(Fraction(-1, 2)) == "-1/2"
    assert format_scalar(cyclotomic6(1) - cyclotomic6.gen()) == "(-t + 1)"


def test_kernel_over_number_field():
    t = cyclotomic6.gen()
    m = Matrix.from_dense([[cyclotomic6.one, t], [t, t * t]], cyclotomic6)
    ker = kernel_basis(m, cyclotomic6.one)
    assert len(ker) == 1 and not m.apply(ker[0])
