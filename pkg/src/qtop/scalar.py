"""
Exact arithmetic in the cyclotomic field Q(zeta), zeta = exp(2 pi i / 4r).

For odd r this field contains q = zeta^4 = exp(2 pi i / r), the imaginary
unit i = zeta^r and sqrt(r), which is everything the small quantum group at
an odd root of unity needs.  Elements are stored as rational polynomials in
zeta reduced modulo the 4r-th cyclotomic polynomial, so equality is equality
of coefficient sequences.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import flint

__all__ = ["FieldContext", "CycScalar", "field_init", "cyclotomic_polynomial"]


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> flint.fmpz_poly:
    num = flint.fmpz_poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            num, rem = divmod(num, _cyclotomic(d))
            assert rem == 0
    return num


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    return [int(c) for c in _cyclotomic(n).coeffs()]


class CycScalar:
    """An immutable element of Q(zeta_{4r})."""

    __slots__ = ("ctx", "poly")

    def __init__(self, ctx: FieldContext, poly: flint.fmpq_poly):
        # callers hand in reduced polynomials; use ctx.element() otherwise
        self.ctx = ctx
        self.poly = poly

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.ctx is not self.ctx:
                raise ValueError("scalars from different fields")
            return other.poly
        if isinstance(other, (int, Fraction)):
            return flint.fmpq_poly([flint.fmpq(other.numerator, other.denominator)])
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CycScalar(self.ctx, self.poly + p)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CycScalar(self.ctx, self.poly - p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CycScalar(self.ctx, p - self.poly)

    def __neg__(self):
        return CycScalar(self.ctx, -self.poly)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, CycScalar):
            if other.ctx is not self.ctx:
                raise ValueError("scalars from different fields")
            a, b = self.poly, other.poly
            if a.is_zero() or b.is_zero():
                return self.ctx.zero
            if a.degree() == 0 or b.degree() == 0:
                return CycScalar(self.ctx, a * b)
            return CycScalar(self.ctx, (a * b) % self.ctx.modulus)
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CycScalar(self.ctx, self.poly * p)

    __rmul__ = __mul__

    def inverse(self) -> CycScalar:
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.poly.degree() == 0:
            return CycScalar(self.ctx, flint.fmpq_poly([1 / self.poly[0]]))
        g, s, _ = self.poly.xgcd(self.ctx.modulus)
        # the modulus is irreducible, so the gcd is a nonzero constant
        assert g.degree() == 0
        return CycScalar(self.ctx, (s / g[0]) % self.ctx.modulus)

    def __truediv__(self, other):
        if isinstance(other, CycScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycScalar(self.ctx, self.poly / flint.fmpq(other.numerator, other.denominator))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return self.poly == p

    def __ne__(self, other):
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    def __hash__(self):
        return hash((self.ctx.order, tuple(str(c) for c in self.poly.coeffs())))

    def __bool__(self):
        return not self.poly.is_zero()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    # -- views -------------------------------------------------------------
    @property
    def order(self) -> int:
        return self.ctx.order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coordinates in the power basis 1, zeta, ..., zeta^(phi-1)."""
        raw = self.poly.coeffs()
        out = [Fraction(int(c.p), int(c.q)) for c in raw]
        out += [Fraction(0)] * (self.ctx.degree - len(out))
        return tuple(out)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def approx(self) -> complex:
        """Double precision value at zeta = exp(2 pi i / 4r); never used for decisions."""
        total = 0j
        for k, c in enumerate(self.poly.coeffs()):
            if c != 0:
                total += (int(c.p) / int(c.q)) * self.ctx._zeta_num[k]
        return total

    def conjugate(self) -> CycScalar:
        """Complex conjugation, zeta -> zeta^-1."""
        total = self.ctx.zero
        for k, c in enumerate(self.poly.coeffs()):
            if c != 0:
                total = total + self.ctx.zeta(-k) * Fraction(int(c.p), int(c.q))
        return total

    def to_json(self) -> dict:
        z = self.approx()
        return {
            "order": self.ctx.order,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
            "approx": [z.real, z.imag],
        }

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"CycScalar[{self.ctx.order}]({body})"

    def __str__(self):
        z = self.approx()
        return f"{z.real:.12g}{z.imag:+.12g}j"


class FieldContext:
    """The field Q(zeta_{4r}) together with the constants used by Ubar_q(sl2)."""

    def __init__(self, r: int):
        if not isinstance(r, int) or r < 3 or r % 2 == 0:
            raise ValueError("r must be odd >= 3")
        self.r = r
        self.order = 4 * r
        self.modulus = flint.fmpq_poly(_cyclotomic(self.order).coeffs())
        self.degree = self.modulus.degree()
        self._zeta_num = [cmath.exp(2j * math.pi * k / self.order) for k in range(self.degree)]
        self.zero = CycScalar(self, flint.fmpq_poly([]))
        self.one = CycScalar(self, flint.fmpq_poly([1]))
        self._zeta = []
        x = flint.fmpq_poly([0, 1])
        p = flint.fmpq_poly([1])
        for _ in range(self.order):
            self._zeta.append(CycScalar(self, p))
            p = (p * x) % self.modulus
        self._sqrt_r = None

    def __repr__(self):
        return f"FieldContext(r={self.r})"

    def __reduce__(self):
        return (field_init, (self.r,))

    # -- constructors ------------------------------------------------------
    def element(self, coeffs) -> CycScalar:
        """Element from power-basis coordinates of any length (reduced here)."""
        poly = flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs])
        return CycScalar(self, poly % self.modulus)

    def rational(self, x) -> CycScalar:
        x = Fraction(x)
        return CycScalar(self, flint.fmpq_poly([flint.fmpq(x.numerator, x.denominator)]))

    def coerce(self, x) -> CycScalar:
        if isinstance(x, CycScalar):
            return x
        return self.rational(x)

    def from_json(self, data: dict) -> CycScalar:
        if data["order"] != self.order:
            raise ValueError("scalar belongs to a different field")
        return self.element([Fraction(n, d) for n, d in data["coeffs"]])

    def zeta(self, k: int = 1) -> CycScalar:
        return self._zeta[k % self.order]

    def q(self, k: int = 1) -> CycScalar:
        """q^k with q = exp(2 pi i / r)."""
        return self._zeta[(4 * k) % self.order]

    @property
    def i(self) -> CycScalar:
        return self._zeta[self.r]

    def i_pow(self, k: int) -> CycScalar:
        return self._zeta[(self.r * k) % self.order]

    # -- quantum numbers ---------------------------------------------------
    def qbrace(self, k: int) -> CycScalar:
        """{k} = q^k - q^-k."""
        return self.q(k) - self.q(-k)

    def qbrace_prime(self, k: int) -> CycScalar:
        """{k}' = q^k + q^-k."""
        return self.q(k) + self.q(-k)

    def qint(self, k: int) -> CycScalar:
        """[k] = {k}/{1}."""
        return _qint(self, k)

    def qfact(self, k: int) -> CycScalar:
        if k < 0:
            raise ValueError("quantum factorial of a negative integer")
        return _qfact(self, k)

    def gauss_sqrt_r(self) -> CycScalar:
        """The positive square root of r, obtained from a quadratic Gauss sum."""
        if self._sqrt_r is None:
            g = self.zero
            for k in range(self.r):
                g = g + self.q(k * k)
            # sum_k q^{k^2} = sqrt(r) for r = 1 mod 4 and i sqrt(r) for r = 3 mod 4
            if self.r % 4 == 3:
                g = g * self.i_pow(-1)
            if g.approx().real < 0:
                g = -g
            assert g * g == self.rational(self.r)
            self._sqrt_r = g
        return self._sqrt_r


@lru_cache(maxsize=None)
def _qint(ctx: FieldContext, k: int) -> CycScalar:
    return ctx.qbrace(k) / ctx.qbrace(1)


@lru_cache(maxsize=None)
def _qfact(ctx: FieldContext, k: int) -> CycScalar:
    out = ctx.one
    for j in range(1, k + 1):
        out = out * ctx.qint(j)
    return out


@lru_cache(maxsize=None)
def field_init(r: int) -> FieldContext:
    """Shared field context for a given odd r >= 3."""
    return FieldContext(r)
