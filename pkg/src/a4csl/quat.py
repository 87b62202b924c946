"""Hamilton quaternions with coefficients in K = Q(sqrt 5).

Conventions: basis 1, i, j, k with i^2 = j^2 = k^2 = -1 and ij = k, jk = i,
ki = j.  Reduced norm nr(q) = q qbar and reduced trace tr(q) = q + qbar are
central (scalar) and land in K.

Besides quaternion conjugation x -> xbar, the algebra carries the twist map

    (a, b, c, d)~  =  (a', b', d', c')

which applies algebraic conjugation to every coefficient and swaps the two
last coordinates.  It is an anti-automorphism (like conjugation) and the two
interplay through the maps phi_plus(x) = x + x~ and phi_minus(x) = x - x~.
"""

from __future__ import annotations

from fractions import Fraction

from .golden import GoldenInt, GoldenNum, QONE, QZERO


def _as_gnum(v) -> GoldenNum:
    if isinstance(v, GoldenNum):
        return v
    if isinstance(v, (GoldenInt, int)):
        return GoldenNum(v)
    if isinstance(v, Fraction):
        return GoldenNum(GoldenInt(v.numerator), v.denominator)
    raise TypeError(f"cannot use {v!r} as a quaternion coefficient")


class QuatK:
    """Quaternion a + b*i + c*j + d*k over Q(sqrt 5)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b=0, c=0, d=0) -> None:
        object.__setattr__(self, "a", _as_gnum(a))
        object.__setattr__(self, "b", _as_gnum(b))
        object.__setattr__(self, "c", _as_gnum(c))
        object.__setattr__(self, "d", _as_gnum(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuatK is immutable")

    def coeffs(self) -> tuple[GoldenNum, GoldenNum, GoldenNum, GoldenNum]:
        return (self.a, self.b, self.c, self.d)

    # -- additive structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QuatK):
            return NotImplemented
        return QuatK(self.a + other.a, self.b + other.b,
                     self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        if not isinstance(other, QuatK):
            return NotImplemented
        return QuatK(self.a - other.a, self.b - other.b,
                     self.c - other.c, self.d - other.d)

    def __neg__(self):
        return QuatK(-self.a, -self.b, -self.c, -self.d)

    # -- multiplicative structure ----------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (GoldenNum, GoldenInt, int, Fraction)):
            s = _as_gnum(other)
            return QuatK(self.a * s, self.b * s, self.c * s, self.d * s)
        if not isinstance(other, QuatK):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return QuatK(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )

    def __rmul__(self, other):
        if isinstance(other, (GoldenNum, GoldenInt, int, Fraction)):
            return self * other  # scalars are central
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (GoldenNum, GoldenInt, int, Fraction)):
            s = _as_gnum(other)
            return self * s.inverse()
        if isinstance(other, QuatK):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, QuatK):
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __bool__(self):
        return any(self.coeffs())

    def __repr__(self):
        return f"QuatK({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.coeffs()) + ")"

    # -- involutions and norms ---------------------------------------------------

    def conj(self) -> "QuatK":
        """Quaternion conjugate qbar: negate the vector part."""
        return QuatK(self.a, -self.b, -self.c, -self.d)

    def twist(self) -> "QuatK":
        """Coefficient-wise algebraic conjugation followed by the j/k swap."""
        return QuatK(self.a.conj_prime(), self.b.conj_prime(),
                     self.d.conj_prime(), self.c.conj_prime())

    def conj_prime(self) -> "QuatK":
        """Coefficient-wise algebraic conjugation (no coordinate swap)."""
        return QuatK(self.a.conj_prime(), self.b.conj_prime(),
                     self.c.conj_prime(), self.d.conj_prime())

    def nr(self) -> GoldenNum:
        """Reduced norm: the scalar q*qbar = a^2 + b^2 + c^2 + d^2."""
        return (self.a * self.a + self.b * self.b
                + self.c * self.c + self.d * self.d)

    def trace(self) -> GoldenNum:
        """Reduced trace: the scalar q + qbar = 2a."""
        return self.a + self.a

    def inverse(self) -> "QuatK":
        n = self.nr()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero quaternion")
        return self.conj() * n.inverse()

    def is_integral_coeffs(self) -> bool:
        return all(v.is_integral() for v in self.coeffs())


QUAT_ZERO = QuatK(QZERO)
QUAT_ONE = QuatK(QONE)


def twist(q: QuatK) -> QuatK:
    return q.twist()


def nr(q: QuatK) -> GoldenNum:
    return q.nr()


def trace(q: QuatK) -> GoldenNum:
    return q.trace()


def phi_plus(q: QuatK) -> QuatK:
    """x + x~, the twist-symmetrization."""
    return q + q.twist()


def phi_minus(q: QuatK) -> QuatK:
    """x - x~; satisfies phi_plus(sqrt5 * x) = sqrt5 * phi_minus(x)."""
    return q - q.twist()
