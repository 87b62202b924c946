"""The icosian ring I: a maximal order in the Hamilton quaternions over Q(sqrt 5).

I is the o-span of

    b1 = (1,0,0,0), b2 = (0,1,0,0), b3 = (1,1,1,1)/2, b4 = (1-t, t, 0, 1)/2,

a ring whose 120 norm-one units form the binary icosahedral group.  As a
Z-module it has rank 8 with basis {b1..b4, t*b1..t*b4}; all right ideals are
principal, and a primitive admissible generator q can be rescaled by a golden
integer alpha_q so that its reduced norm becomes the positive rational
integer sigma = lcm(nr q, (nr q)') — the arithmetic backbone of coincidence
counting downstream.

Membership is decided twice on every call — by solving for o-coordinates
against the basis and by integrality of the trace pairing with the Z-basis
(self-duality) — and the two verdicts are required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import isqrt

from .golden import (
    GoldenInt,
    GoldenNum,
    ONE,
    TAU,
    TAU_INV,
    ZERO,
    canonical_associate,
    conj_prime,
    divides,
    exact_div,
    factor_golden,
    gcd_golden,
    lcm_golden,
    split_prime,
)
from .hnf import hnf_columns
from .quat import QuatK, twist as quat_twist

_HALF_ONE = GoldenNum(ONE, 2)
_ONE_MINUS_TAU = GoldenInt(1, -1)  # = t' = -1/t

OBASIS: tuple[QuatK, ...] = (
    QuatK(1, 0, 0, 0),
    QuatK(0, 1, 0, 0),
    QuatK(_HALF_ONE, _HALF_ONE, _HALF_ONE, _HALF_ONE),
    QuatK(GoldenNum(_ONE_MINUS_TAU, 2), GoldenNum(TAU, 2), 0, _HALF_ONE),
)

ZBASIS: tuple[QuatK, ...] = OBASIS + tuple(b * TAU for b in OBASIS)


def ocoords_of(q: QuatK) -> tuple[GoldenInt, GoldenInt, GoldenInt, GoldenInt] | None:
    """Solve q = sum c_i b_i for the o-coordinates; None if any lies outside o."""
    dc = q.d - q.c
    c3 = q.c + q.c
    c4 = dc + dc
    c2 = q.b - q.c - dc * GoldenNum(TAU)
    c1 = q.a - q.c - dc * GoldenNum(_ONE_MINUS_TAU)
    coords = (c1, c2, c3, c4)
    if not all(c.is_integral() for c in coords):
        return None
    return tuple(c.to_golden_int() for c in coords)


def _dual_membership(q: QuatK) -> bool:
    """tr(q ybar) must be integral for the whole Z-basis (I is self-dual)."""
    return all((q * y.conj()).trace().is_integral() for y in ZBASIS)


class Icosian:
    """An element of I, carrying both its quaternion value and o-coordinates."""

    __slots__ = ("value", "ocoords")

    def __init__(self, value: QuatK, ocoords) -> None:
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "ocoords", tuple(ocoords))

    def __setattr__(self, name, v):
        raise AttributeError("Icosian is immutable")

    @staticmethod
    def from_quat(q: QuatK) -> "Icosian":
        m = membership(q)
        if m is None:
            raise ValueError(f"{q} is not in the icosian ring")
        return m

    @staticmethod
    def from_ocoords(c1, c2, c3, c4) -> "Icosian":
        coords = tuple(c if isinstance(c, GoldenInt) else GoldenInt(c)
                       for c in (c1, c2, c3, c4))
        q = QuatK(0)
        for c, b in zip(coords, OBASIS):
            q = q + b * c
        return Icosian(q, coords)

    @staticmethod
    def from_zcoords(z) -> "Icosian":
        if len(z) != 8:
            raise ValueError("need 8 integer coordinates")
        return Icosian.from_ocoords(*(GoldenInt(z[i], z[i + 4]) for i in range(4)))

    def zcoords(self) -> tuple[int, ...]:
        return tuple(c.a for c in self.ocoords) + tuple(c.b for c in self.ocoords)

    # -- arithmetic (ring closure re-checked on every product) -----------------

    def __add__(self, other):
        if not isinstance(other, Icosian):
            return NotImplemented
        return Icosian(self.value + other.value,
                       tuple(a + b for a, b in zip(self.ocoords, other.ocoords)))

    def __sub__(self, other):
        if not isinstance(other, Icosian):
            return NotImplemented
        return Icosian(self.value - other.value,
                       tuple(a - b for a, b in zip(self.ocoords, other.ocoords)))

    def __neg__(self):
        return Icosian(-self.value, tuple(-c for c in self.ocoords))

    def __mul__(self, other):
        if isinstance(other, Icosian):
            return Icosian.from_quat(self.value * other.value)
        if isinstance(other, (GoldenInt, int)):
            s = other if isinstance(other, GoldenInt) else GoldenInt(other)
            return Icosian(self.value * s, tuple(c * s for c in self.ocoords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (GoldenInt, int)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Icosian):
            return NotImplemented
        return self.ocoords == other.ocoords

    def __hash__(self):
        return hash(self.ocoords)

    def __bool__(self):
        return any(self.ocoords)

    def __repr__(self):
        return f"Icosian.from_ocoords{tuple(str(c) for c in self.ocoords)}"

    def __str__(self):
        return str(self.value)

    def conj(self) -> "Icosian":
        return Icosian.from_quat(self.value.conj())

    def twist(self) -> "Icosian":
        return Icosian.from_quat(quat_twist(self.value))

    def nr(self) -> GoldenInt:
        return self.value.nr().to_golden_int()

    def trace_golden(self) -> GoldenInt:
        return self.value.trace().to_golden_int()

    def is_zero(self) -> bool:
        return not self

    def to_json(self) -> list[list[int]]:
        return [[c.a, c.b] for c in self.ocoords]

    @staticmethod
    def from_json(data) -> "Icosian":
        return Icosian.from_ocoords(*(GoldenInt(a, b) for a, b in data))


ICOSIAN_ONE = Icosian.from_ocoords(1, 0, 0, 0)


def membership(q: QuatK) -> Icosian | None:
    """q as an Icosian, or None; the coordinate and trace-duality routes
    must return the same verdict."""
    coords = ocoords_of(q)
    dual = _dual_membership(q)
    if (coords is not None) != dual:
        raise AssertionError(f"membership oracles disagree on {q}")
    return None if coords is None else Icosian(q, coords)


def _fold_gcd(values: list[GoldenInt]) -> GoldenInt:
    g = None
    for v in values:
        if v.is_zero():
            continue
        g = v if g is None else gcd_golden(g, v)[0]
    if g is None:
        raise ValueError("content of zero")
    return canonical_associate(g)


def content(q: Icosian) -> GoldenInt:
    """Canonical gcd of the o-coordinates; cross-checked against the gcd of
    the trace pairings with the Z-basis, which generates the same ideal."""
    if q.is_zero():
        raise ValueError("content of zero")
    by_coords = _fold_gcd(list(q.ocoords))
    traces = [(q.value * y.conj()).trace().to_golden_int() for y in ZBASIS]
    by_traces = _fold_gcd(traces)
    if by_coords != by_traces:
        raise AssertionError(f"content routes disagree on {q}: {by_coords} vs {by_traces}")
    return by_coords


def is_primitive(q: Icosian) -> bool:
    return content(q).is_unit()


def primitive_part(q: Icosian) -> tuple[GoldenInt, Icosian]:
    """q = gamma * p with gamma the content and p primitive."""
    gamma = content(q)
    p = Icosian.from_ocoords(*(exact_div(c, gamma) for c in q.ocoords))
    return gamma, p


def is_admissible(q: Icosian) -> bool:
    """abs_norm(nr q) is a perfect square.

    Cross-checked against the valuation criterion: even exponent at the
    ramified prime and matching parities within every split pair.
    """
    if q.is_zero():
        raise ValueError("admissibility of zero")
    nu = q.nr()
    big_n = nu.abs_norm()
    r = isqrt(big_n)
    square = r * r == big_n
    f = factor_golden(nu)
    by_val = True
    split_exps: dict[int, dict[GoldenInt, int]] = {}
    for prime, e, kind in f.factors:
        if kind == "ramified" and e % 2:
            by_val = False
        if kind == "split":
            split_exps.setdefault(prime.norm(), {})[prime] = e
    for p, exps in split_exps.items():
        pi, pibar = split_prime(p).primes
        if (exps.get(pi, 0) - exps.get(pibar, 0)) % 2:
            by_val = False
    if square != by_val:
        raise AssertionError(f"admissibility routes disagree on {q}")
    return square


@dataclass(frozen=True)
class ExtensionPair:
    """q rescaled to q_alpha = alpha*q whose reduced norm is the rational
    integer sigma = lcm(nr q, (nr q)')."""
    q: Icosian
    alpha: GoldenInt
    q_alpha: Icosian
    sigma: int


def _tau_power(u: GoldenInt) -> int:
    """Exponent k with u = t^k; raises if u is not a positive power-of-t unit."""
    for k in range(0, 64):
        if u == TAU ** k:
            return k
        if u == TAU_INV ** k:
            return -k
    raise ValueError(f"{u} is not t^k with |k| < 64")


def extension(q: Icosian) -> ExtensionPair:
    """Rescale a primitive admissible q so its norm is exactly sigma.

    sigma/nr(q) has even valuation everywhere and a totally positive unit
    part, hence is a perfect square in o; its square root alpha_q is
    supported only on split primes (asserted).
    """
    if not is_primitive(q):
        raise ValueError("extension requires a primitive icosian")
    if not is_admissible(q):
        raise ValueError("extension requires an admissible icosian")
    nu = q.nr()
    sig = lcm_golden(nu, conj_prime(nu))
    if not (sig.is_rational() and sig.a > 0):
        raise AssertionError(f"sigma of admissible element must be a positive integer, got {sig}")
    sigma = sig.a
    delta = exact_div(sig, nu)
    f = factor_golden(delta)
    alpha = ONE
    for prime, e, kind in f.factors:
        if kind != "split":
            raise AssertionError(f"alpha picked up a {kind} prime {prime}")
        if e % 2:
            raise AssertionError(f"odd valuation {e} at {prime} in sigma/nr")
        alpha = alpha * prime ** (e // 2)
    k = _tau_power(f.unit)
    if k % 2:
        raise AssertionError(f"unit part {f.unit} of sigma/nr is not a square")
    alpha = alpha * (TAU ** (k // 2) if k >= 0 else TAU_INV ** (-k // 2))
    q_alpha = q * alpha
    if q_alpha.nr() != sig:
        raise AssertionError("alpha^2 * nr(q) != sigma")
    return ExtensionPair(q=q, alpha=alpha, q_alpha=q_alpha, sigma=sigma)


def trace_witness(q: Icosian) -> Icosian:
    """z in I with tr(q zbar) = 1, from Bezout data of the basis traces.

    The eight values tr(q ybar_i) generate the unit ideal exactly when q is
    primitive; folding their gcd keeps enough coefficients to assemble z.
    """
    traces = [(q.value * y.conj()).trace().to_golden_int() for y in ZBASIS]
    g = None
    coeffs: list[GoldenInt] = []
    for i, tv in enumerate(traces):
        if g is None:
            if tv.is_zero():
                coeffs.append(ZERO)
                continue
            g = tv
            coeffs.append(ONE)
            continue
        g2, u, v = gcd_golden(g, tv)
        coeffs = [u * c for c in coeffs] + [v]
        g = g2
    if g is None or not g.is_unit():
        raise ValueError("trace witness needs a primitive icosian")
    # g is canonical, i.e. exactly 1, so the Bezout combination equals 1
    z = QuatK(0)
    for c, y in zip(coeffs, ZBASIS):
        z = z + y * c
    witness = Icosian.from_quat(z)
    if (q.value * witness.value.conj()).trace() != GoldenNum(ONE):
        raise AssertionError("trace witness failed its defining identity")
    return witness


def extended_trace_witness(pair: ExtensionPair) -> Icosian:
    """z with tr(q_a zbar) + tr(twist(zbar) twist(q_a)) = 1.

    Constructively: z0 a plain trace witness for q, beta*alpha + delta*alpha'
    = 1 by coprimality, and z = (t*beta + (1-t)*delta') z0.
    """
    z0 = trace_witness(pair.q)
    a = pair.alpha
    g, beta, delta = gcd_golden(a, conj_prime(a))
    if not g.is_unit():
        raise AssertionError("alpha and alpha' are not coprime")
    # gcd is canonical (= 1), so beta*a + delta*a' = 1 exactly
    scalar = TAU * beta + _ONE_MINUS_TAU * conj_prime(delta)
    z = z0 * scalar
    qa = pair.q_alpha.value
    total = (qa * z.value.conj()).trace() \
        + (quat_twist(z.value.conj()) * quat_twist(qa)).trace()
    if total != GoldenNum(ONE):
        raise AssertionError("extended trace witness identity failed")
    return z


@dataclass(frozen=True)
class RightIdealLabel:
    """Column Hermite form of q*(Z-basis of I) in the Z-basis of I.

    Equal labels name equal right ideals q I."""
    hnf: tuple[tuple[int, ...], ...]

    def determinant(self) -> int:
        d = 1
        for i in range(8):
            d *= self.hnf[i][i]
        return d

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.hnf]


def right_ideal_label(q: Icosian) -> RightIdealLabel:
    if q.is_zero():
        raise ValueError("zero generates the zero ideal")
    cols = [Icosian.from_quat(q.value * y).zcoords() for y in ZBASIS]
    mat = [[cols[j][i] for j in range(8)] for i in range(8)]
    h = hnf_columns(mat)
    label = RightIdealLabel(hnf=tuple(tuple(row) for row in h))
    expected = q.nr().abs_norm() ** 2
    if label.determinant() != expected:
        raise AssertionError("ideal label determinant != abs_norm(nr)^2")
    return label


@cache
def units_mod_center() -> tuple[Icosian, ...]:
    """The 120 norm-one units of I (binary icosahedral group).

    Generated by multiplicative closure from the basis elements and their
    inverses, deduplicated modulo sign first and lifted back at the end.
    """
    gens = []
    for b in OBASIS:
        u = Icosian.from_quat(b)
        if u.nr() != ONE:
            raise AssertionError("basis element is not a unit")
        gens.append(u)
        gens.append(Icosian.from_quat(b.conj()))  # inverse, since nr = 1

    def sign_rep(z: tuple[int, ...]) -> tuple[int, ...]:
        for v in z:
            if v > 0:
                return z
            if v < 0:
                return tuple(-x for x in z)
        return z

    seen: dict[tuple[int, ...], Icosian] = {}
    frontier = [ICOSIAN_ONE]
    seen[sign_rep(ICOSIAN_ONE.zcoords())] = ICOSIAN_ONE
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                w = u * g
                key = sign_rep(w.zcoords())
                if key not in seen:
                    seen[key] = w
                    nxt.append(w)
        frontier = nxt
    units: list[Icosian] = []
    for w in seen.values():
        units.append(w)
        units.append(-w)
    if len(units) != 120:
        raise AssertionError(f"unit closure found {len(units)} elements, wanted 120")
    return tuple(units)
