from fractions import Fraction

from qtop.linalg import Matrix, determinant, inverse, is_invertible, nullspace, rank, solve
from qtop.scalar import field_init

ctx = field_init(3)


def test_rank_and_nullspace():
    m = Matrix.from_dense(ctx, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    ns = nullspace(m)
    assert len(ns) == 1
    v = ns[0]
    out = m.apply(v)
    assert all(x.is_zero() for x in out.values())


def test_inverse_and_determinant():
    q = ctx.q(1)
    m = Matrix.from_dense(ctx, [[q, 1], [1, q]])
    assert inverse(m) @ m == Matrix.identity(ctx, 2)
    assert determinant(m) == q * q - 1
    assert is_invertible(m)
    assert not is_invertible(Matrix.from_dense(ctx, [[1, 1], [1, 1]]))


def test_solve():
    m = Matrix.from_dense(ctx, [[2, 0], [0, 3]])
    x = solve(m, {0: ctx.rational(4), 1: ctx.rational(1)})
    assert x[0] == ctx.rational(2) and x[1] == ctx.rational(Fraction(1, 3))


def test_kron_and_trace():
    a = Matrix.from_dense(ctx, [[1, 2], [3, 4]])
    b = Matrix.identity(ctx, 3)
    k = a.kron(b)
    assert k.shape == (6, 6)
    assert k.trace() == ctx.rational(15)
