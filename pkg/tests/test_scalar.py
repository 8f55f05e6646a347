from fractions import Fraction

import pytest

from qtop.scalar import cyclotomic_polynomial, field_init


@pytest.mark.parametrize("r", [3, 5, 7])
def test_roots_of_unity(r):
    ctx = field_init(r)
    assert ctx.q(r) == ctx.one
    assert ctx.i * ctx.i == -ctx.one
    assert ctx.zeta(4 * r) == ctx.one
    assert ctx.q(1) != ctx.one


def test_cyclotomic_degree():
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]
    assert field_init(5).degree == 8


@pytest.mark.parametrize("r", [3, 5, 7])
def test_quantum_numbers(r):
    ctx = field_init(r)
    assert ctx.qint(r).is_zero()
    assert ctx.qint(1) == ctx.one
    assert ctx.qint(2) == ctx.qbrace_prime(1)
    for k in range(1, r):
        assert ctx.qint(k) * ctx.qbrace(1) == ctx.qbrace(k)
    assert not ctx.qfact(r - 1).is_zero()


@pytest.mark.parametrize("r", [3, 5, 7, 9])
def test_sqrt_r(r):
    ctx = field_init(r)
    s = ctx.gauss_sqrt_r()
    assert s * s == ctx.rational(r)
    assert s.approx().real > 0


def test_field_arithmetic():
    ctx = field_init(5)
    x = ctx.element([1, 2, Fraction(1, 3)])
    assert x * x.inverse() == ctx.one
    assert (x + 1) - 1 == x
    assert ctx.from_json(x.to_json()) == x
    assert abs(x.conjugate().approx() - x.approx().conjugate()) < 1e-12
    assert ctx.rational(Fraction(3, 4)).to_fraction() == Fraction(3, 4)


def test_field_mismatch():
    with pytest.raises(ValueError):
        field_init(3).one + field_init(5).one
    with pytest.raises(ValueError):
        field_init(4)
