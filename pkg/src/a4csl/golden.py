"""Exact arithmetic in o = Z[t], the ring of integers of Q(sqrt(5)).

Here t denotes the golden ratio (1+sqrt(5))/2, so t^2 = t + 1 and
sqrt(5) = 2t - 1.  Elements are stored as integer pairs a + b*t.  The ring
is a norm-Euclidean PID; units are +-t^k.  Everything in this module is
immutable, pure, and float-free.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cache


class GoldenInt:
    """a + b*t with integers a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0) -> None:
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):  # immutable by convention
        raise AttributeError("GoldenInt is immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def _from_obj(obj) -> "GoldenInt | None":
        if isinstance(obj, GoldenInt):
            return obj
        if isinstance(obj, int):
            return GoldenInt(obj, 0)
        return None

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        o = GoldenInt._from_obj(other)
        if o is None:
            return NotImplemented
        return GoldenInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = GoldenInt._from_obj(other)
        if o is None:
            return NotImplemented
        return GoldenInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = GoldenInt._from_obj(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = GoldenInt._from_obj(other)
        if o is None:
            return NotImplemented
        # (a+bt)(c+dt) = ac + bd + (ad+bc+bd) t   since t^2 = t+1
        return GoldenInt(self.a * o.a + self.b * o.b,
                         self.a * o.b + self.b * o.a + self.b * o.b)

    __rmul__ = __mul__

    def __neg__(self):
        return GoldenInt(-self.a, -self.b)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = GoldenInt(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = GoldenInt._from_obj(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self):
        return render_golden(self)

    # -- field-theoretic helpers --------------------------------------------

    def conj_prime(self) -> "GoldenInt":
        """Algebraic conjugate: t -> 1 - t, i.e. sqrt(5) -> -sqrt(5)."""
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        """Signed field norm n(a+bt) = a^2 + ab - b^2."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def abs_norm(self) -> int:
        return abs(self.norm())

    def trace(self) -> int:
        """Field trace: (a+bt) + (a+bt)' = 2a + b."""
        return 2 * self.a + self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.abs_norm() == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def embedding_signs(self) -> tuple[int, int]:
        """Signs of the two real embeddings (t -> 1.618..., t -> -0.618...).

        Exact: a + b*t has the sign of u + v*sqrt(5) with u = 2a+b, v = b,
        decided by comparing u^2 against 5 v^2 when the terms disagree.
        """
        u, v = 2 * self.a + self.b, self.b
        return (_sign_u_plus_v_sqrt5(u, v), _sign_u_plus_v_sqrt5(u, -v))

    def is_totally_positive(self) -> bool:
        s1, s2 = self.embedding_signs()
        return s1 > 0 and s2 > 0


def _sign_u_plus_v_sqrt5(u: int, v: int) -> int:
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if v > 0 else -1
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    # mixed signs: |u| vs |v|*sqrt(5)
    if u * u == 5 * v * v:
        return 0  # impossible for nonzero integers (5 not a square) but cheap
    bigger_u = u * u > 5 * v * v
    return (1 if u > 0 else -1) if bigger_u else (1 if v > 0 else -1)


ZERO = GoldenInt(0)
ONE = GoldenInt(1)
TAU = GoldenInt(0, 1)
TAU_INV = GoldenInt(-1, 1)   # t - 1 = 1/t
TAU2 = GoldenInt(1, 1)       # t^2
TAU2_INV = GoldenInt(2, -1)  # t^-2
SQRT5 = GoldenInt(-1, 2)     # 2t - 1


def conj_prime(x):
    """Algebraic conjugation on GoldenInt or GoldenNum (involutive)."""
    return x.conj_prime()


def abs_norm(x: GoldenInt) -> int:
    return x.abs_norm()


# -- exact and rounded division ---------------------------------------------

def exact_div(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    """x / y when y divides x in o; raises ValueError otherwise."""
    if y.is_zero():
        raise ValueError("division by zero")
    n = y.norm()
    t = x * y.conj_prime()
    if t.a % n or t.b % n:
        raise ValueError(f"{y} does not divide {x}")
    return GoldenInt(t.a // n, t.b // n)


def divides(d: GoldenInt, x: GoldenInt) -> bool:
    if d.is_zero():
        return x.is_zero()
    n = d.norm()
    t = x * d.conj_prime()
    return t.a % n == 0 and t.b % n == 0


def _round_nearest(num: int, den: int) -> int:
    # round num/den to a nearest integer (den may be negative)
    if den < 0:
        num, den = -num, -den
    return (2 * num + den) // (2 * den)


def divmod_nearest(x: GoldenInt, y: GoldenInt) -> tuple[GoldenInt, GoldenInt]:
    """Euclidean step: q with both coordinates of x/y rounded to nearest.

    The rounding error e has coordinates in [-1/2, 1/2], and
    max |e_a^2 + e_a e_b - e_b^2| = 5/16 < 1 on that square, so
    N(x - q y) <= (5/16) N(y).  That strict decrease makes gcd terminate.
    """
    if y.is_zero():
        raise ValueError("division by zero")
    n = y.norm()
    t = x * y.conj_prime()
    q = GoldenInt(_round_nearest(t.a, n), _round_nearest(t.b, n))
    return q, x - q * y


# -- canonical associates ----------------------------------------------------

def canonical_unit(x: GoldenInt) -> GoldenInt:
    """The unit u such that u*x is the canonical associate of x.

    Canonical representative of the class x*{+-t^k}: the totally positive
    associate of minimal trace.  A trace tie happens exactly for the classes
    (sqrt(5) * rational), where the two minimizers are a conjugate pair; those
    classes are resolved by routing through sqrt(5)*x, whose class is
    tie-free, and dividing back (the quotient is again an associate of x).
    Constant on associate classes and idempotent.
    """
    if x.is_zero():
        raise ValueError("zero has no canonical associate")
    u = ONE
    y = x
    if y.norm() < 0:
        y, u = y * TAU, TAU
    if not y.is_totally_positive():
        y, u = -y, -u
    while (y * TAU2).trace() < y.trace():
        y, u = y * TAU2, u * TAU2
    while (y * TAU2_INV).trace() < y.trace():
        y, u = y * TAU2_INV, u * TAU2_INV
    if (y * TAU2).trace() == y.trace() or (y * TAU2_INV).trace() == y.trace():
        # tie class: c(x) = c(sqrt5 * x) / sqrt5, same unit (depth-1 recursion)
        return canonical_unit(x * SQRT5)
    return u


def canonical_associate(x: GoldenInt) -> GoldenInt:
    return canonical_unit(x) * x


def unit_inverse(u: GoldenInt) -> GoldenInt:
    """Inverse of a unit: u^-1 = n(u) * u' since u u' = n(u) = +-1."""
    n = u.norm()
    if n not in (1, -1):
        raise ValueError(f"{u} is not a unit")
    c = u.conj_prime()
    return c if n == 1 else -c


# -- gcd / lcm ----------------------------------------------------------------

def gcd_golden(x: GoldenInt, y: GoldenInt) -> tuple[GoldenInt, GoldenInt, GoldenInt]:
    """Extended Euclidean gcd: returns (g, u, v) with u*x + v*y = g.

    g is the canonical associate generating x*o + y*o.
    """
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = x, y
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while not r1.is_zero():
        q, r = divmod_nearest(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    w = canonical_unit(r0)
    return w * r0, w * u0, w * v0


def lcm_golden(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    """Canonical generator of the ideal (x) intersect (y)."""
    if x.is_zero() or y.is_zero():
        raise ValueError("lcm with zero")
    g, _, _ = gcd_golden(x, y)
    return canonical_associate(exact_div(x * y, g))


def coprime(x: GoldenInt, y: GoldenInt) -> bool:
    g, _, _ = gcd_golden(x, y)
    return g.is_unit()


# -- rational primes in o ------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RationalPrimeSplit:
    """How a rational prime p factors in o: p*o = (prod primes)^exponent."""
    kind: str                       # "ramified" | "split" | "inert"
    primes: tuple[GoldenInt, ...]   # canonical associates; split pair is (pi, pi')
    exponent: int


@cache
def split_prime(p: int) -> RationalPrimeSplit:
    """Factor p*o.  5 ramifies as (2t-1)^2; p = +-1 mod 5 splits; else inert.

    The split prime is found by solving x^2 = x + 1 (mod p) and reducing
    gcd(p, x - t); of the two conjugate canonical representatives we name pi
    the one with positive t-coefficient (for 11 that is 3 + t).
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 5:
        return RationalPrimeSplit("ramified", (canonical_associate(SQRT5),), 2)
    if p % 5 in (1, 4):
        x = next(x for x in range(2, p) if (x * x - x - 1) % p == 0)
        g, _, _ = gcd_golden(GoldenInt(p), GoldenInt(x, -1))
        pi = canonical_associate(g)
        if pi.b < 0:
            pi = pi.conj_prime()
        return RationalPrimeSplit("split", (pi, pi.conj_prime()), 1)
    return RationalPrimeSplit("inert", (GoldenInt(p),), 1)


def _trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class GoldenFactorization:
    """unit * prod(prime^exponent) = the factored element, exactly."""
    unit: GoldenInt
    factors: tuple[tuple[GoldenInt, int, str], ...]  # (prime, exponent, kind)

    def value(self) -> GoldenInt:
        out = self.unit
        for prime, e, _kind in self.factors:
            out = out * prime ** e
        return out

    def valuation(self, prime: GoldenInt) -> int:
        for q, e, _kind in self.factors:
            if q == prime:
                return e
        return 0


def factor_golden(x: GoldenInt) -> GoldenFactorization:
    """Complete factorization over canonical golden primes.

    Factors abs_norm(x) over Z by trial division, then peels each canonical
    prime above every rational divisor off x by exact division.  The
    leftover cofactor must be a unit, which is returned as-is.
    """
    if x.is_zero():
        raise ValueError("cannot factor zero")
    factors = []
    y = x
    for p, _e in _trial_factor(x.abs_norm()):
        sp = split_prime(p)
        for pi in sp.primes:
            v = 0
            while divides(pi, y):
                y = exact_div(y, pi)
                v += 1
            if v:
                factors.append((pi, v, sp.kind))
    if not y.is_unit():
        raise AssertionError(f"factorization left non-unit cofactor {y}")
    return GoldenFactorization(unit=y, factors=tuple(factors))


def golden_valuation(x: GoldenInt, prime: GoldenInt) -> int:
    if x.is_zero():
        raise ValueError("valuation of zero")
    v = 0
    while divides(prime, x):
        x = exact_div(x, prime)
        v += 1
    return v


# -- elements of the field K = Q(sqrt 5) --------------------------------------

class GoldenNum:
    """num/den with num in o and den a positive integer, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: GoldenInt | int, den: int = 1) -> None:
        if isinstance(num, int):
            num = GoldenInt(num)
        if den == 0:
            raise ZeroDivisionError("GoldenNum with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(math.gcd(abs(num.a), abs(num.b)), den)
        if g > 1:
            num = GoldenInt(num.a // g, num.b // g)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNum is immutable")

    @staticmethod
    def _from_obj(obj) -> "GoldenNum | None":
        if isinstance(obj, GoldenNum):
            return obj
        if isinstance(obj, (GoldenInt, int)):
            return GoldenNum(obj)
        if isinstance(obj, Fraction):
            return GoldenNum(GoldenInt(obj.numerator), obj.denominator)
        return None

    def __add__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return GoldenNum(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return GoldenNum(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return GoldenNum(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GoldenNum(-self.num, self.den)

    def __eq__(self, other):
        o = GoldenNum._from_obj(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"GoldenNum({self.num!r}, {self.den})"

    def __str__(self):
        s = render_golden(self.num)
        if self.den == 1:
            return s
        if self.num.a and self.num.b:
            s = f"({s})"
        return f"{s}/{self.den}"

    def inverse(self) -> "GoldenNum":
        n = self.num.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/(x/d) = d*x' / n(x)
        return GoldenNum(self.num.conj_prime() * (self.den if n > 0 else -self.den), abs(n))

    def conj_prime(self) -> "GoldenNum":
        return GoldenNum(self.num.conj_prime(), self.den)

    def norm(self) -> Fraction:
        return Fraction(self.num.norm(), self.den * self.den)

    def trace(self) -> Fraction:
        return Fraction(self.num.trace(), self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_integral(self) -> bool:
        return self.den == 1

    def to_golden_int(self) -> GoldenInt:
        if self.den != 1:
            raise ValueError(f"{self} is not in o")
        return self.num

    def is_totally_positive(self) -> bool:
        return self.num.is_totally_positive()


QZERO = GoldenNum(ZERO)
QONE = GoldenNum(ONE)


# -- text form -----------------------------------------------------------------

def render_golden(x: GoldenInt) -> str:
    """Render a + b*t compactly: '3', '2*t', '3+2*t', '3-2*t', 't'."""
    if x.b == 0:
        return str(x.a)
    bt = "t" if x.b == 1 else ("-t" if x.b == -1 else f"{x.b}*t")
    if x.a == 0:
        return bt
    sign = "+" if x.b > 0 else "-"
    mag = "t" if abs(x.b) == 1 else f"{abs(x.b)}*t"
    return f"{x.a}{sign}{mag}"


_INT_ONLY = re.compile(r"[+-]?\d+")
_T_ONLY = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?t")
_BOTH = re.compile(r"([+-]?\d+)\s*([+-])\s*(?:(\d+)\s*\*?\s*)?t")


def parse_golden(text: str) -> GoldenInt:
    """Parse 'a', 'b*t', or 'a+b*t' (also bare 't', '-t')."""
    s = text.strip()
    if m := _INT_ONLY.fullmatch(s):
        return GoldenInt(int(m.group(0)))
    if m := _T_ONLY.fullmatch(s):
        b = int(m.group(2) or 1)
        return GoldenInt(0, -b if m.group(1) == "-" else b)
    if m := _BOTH.fullmatch(s):
        b = int(m.group(3) or 1)
        return GoldenInt(int(m.group(1)), -b if m.group(2) == "-" else b)
    raise ValueError(f"cannot parse golden integer: {text!r}")
