from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from helpers import small_q
from tropkern import TropScalar, add, meet, mul, tabs


@pytest.mark.parametrize("a, b, want", [(3, 1, 3), (0, 0, 0), (F(-2), F(5, 2), F(5, 2))])
def test_add_is_max(a, b, want):
    assert add(a, b) == TropScalar(want)


@pytest.mark.parametrize("a, b, want", [(2, 5, 7), (F(7, 3), 0, F(7, 3)), (3, -3, 0)])
def test_mul_is_sum(a, b, want):
    assert mul(a, b) == TropScalar(want)


@pytest.mark.parametrize("a, want", [(-4, 4), (0, 0), (F(7, 3), F(7, 3))])
def test_abs(a, want):
    assert tabs(a) == TropScalar(want)


@pytest.mark.parametrize("a, b, want", [(3, 1, 1), (F(5, 2), F(5, 2), F(5, 2)), (-1, 2, -1)])
def test_meet_is_min(a, b, want):
    assert meet(a, b) == TropScalar(want)


def test_operators_and_text():
    a, b = TropScalar(2), TropScalar(F(-1, 3))
    assert a + b == a and a * b == TropScalar(F(5, 3)) and (a & b) == b
    assert a.inverse() == TropScalar(-2)
    assert str(TropScalar(F(1, 2))) == "{1/2}"
    with pytest.raises(TypeError):
        TropScalar(0.5)


@given(small_q, small_q)
def test_bipotent(a, b):
    assert add(a, b).value in (a, b)


@given(small_q, small_q, small_q)
def test_quasi_identity(a, b, c):
    if add(add(a, b), c) == TropScalar(a):
        assert add(a, b) == TropScalar(a)


@given(small_q, small_q, st.integers(0, 12))
def test_frobenius(a, b, m):
    assert m * add(a, b).value == add(m * a, m * b).value


@given(small_q)
def test_abs_symmetric(a):
    assert tabs(a) == tabs(-a)
    assert meet(a, -a).value <= 0 <= tabs(a).value


@given(small_q, small_q, small_q)
def test_semifield_laws(a, b, c):
    for op in (add, meet, mul):
        assert op(a, b) == op(b, a)
        assert op(op(a, b), c) == op(a, op(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(a, meet(b, c)) == meet(mul(a, b), mul(a, c))
