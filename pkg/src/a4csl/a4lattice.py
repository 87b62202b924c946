"""The root lattice L (a copy of A4) inside the icosian ring.

L is the Z-span of

    v1 = (1,0,0,0),  v2 = (-1,1,1,1)/2,  v3 = (0,-1,0,0),  v4 = (0,1,t-1,-t)/2,

which is exactly the twist-fixed part of I, and also phi_plus(I).  Its Gram
matrix tr(v_i conj(v_j)) is the A4 Cartan matrix of determinant 5.

A quaternion q that is primitive, and admissible in the sense that
abs_norm(nr q) is a perfect square den^2, induces the rotation

    R: x  ->  (1/den) q x twist(q),

which maps L to a commensurate copy of itself; the coincidence site lattice
L meet R(L) is computed here two independent ways (ideal route and exact
rational intersection) that are required to agree.  Improper isometries are
handled as quaternion conjugation (which fixes L) followed by a rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd, isqrt

from .golden import GoldenInt, GoldenNum, ONE, SQRT5, TAU, conj_prime
from .hnf import (
    det_bareiss,
    hnf_columns,
    identity_int,
    lattice_intersection,
    matmul,
)
from .icosian import (
    ExtensionPair,
    Icosian,
    ZBASIS,
    extension,
    is_admissible,
    is_primitive,
    membership,
    primitive_part,
    units_mod_center,
)
from .quat import QuatK, phi_plus, twist

_HALF = Fraction(1, 2)

LBASIS: tuple[QuatK, ...] = (
    QuatK(1, 0, 0, 0),
    QuatK(GoldenNum(-ONE, 2), GoldenNum(ONE, 2), GoldenNum(ONE, 2), GoldenNum(ONE, 2)),
    QuatK(0, -1, 0, 0),
    QuatK(0, GoldenNum(ONE, 2), GoldenNum(GoldenInt(-1, 1), 2), GoldenNum(-TAU, 2)),
)

_TWO_FIFTHS_SQRT5 = GoldenNum(SQRT5 * 2, 5)


class A4Vector:
    """A lattice point of L, stored by its integer coordinates."""

    __slots__ = ("zcoords",)

    def __init__(self, zcoords) -> None:
        object.__setattr__(self, "zcoords", tuple(int(c) for c in zcoords))
        if len(self.zcoords) != 4:
            raise ValueError("L-coordinates are 4-vectors")

    def __setattr__(self, name, value):
        raise AttributeError("A4Vector is immutable")

    def quat(self) -> QuatK:
        q = QuatK(0)
        for c, v in zip(self.zcoords, LBASIS):
            q = q + v * c
        return q

    def __eq__(self, other):
        if not isinstance(other, A4Vector):
            return NotImplemented
        return self.zcoords == other.zcoords

    def __hash__(self):
        return hash(self.zcoords)

    def __repr__(self):
        return f"A4Vector({list(self.zcoords)})"


def in_lattice(x: QuatK) -> A4Vector | None:
    """Solve for integer coordinates of x over the L-basis.

    Cross-checked against the structural description of L: x must be a
    twist-invariant icosian exactly when the solve succeeds.
    """
    dc = x.c - x.d
    n4 = dc * _TWO_FIFTHS_SQRT5
    coords = None
    if n4.is_integral() and n4.num.is_rational():
        n4i = n4.num.a
        n2 = x.c + x.d + GoldenNum(GoldenInt(n4i), 2)
        if n2.is_integral() and n2.num.is_rational():
            n2i = n2.num.a
            n3 = GoldenNum(GoldenInt(n2i + n4i), 2) - x.b
            n1 = x.a + GoldenNum(GoldenInt(n2i), 2)
            if (n3.is_integral() and n3.num.is_rational()
                    and n1.is_integral() and n1.num.is_rational()):
                coords = (n1.num.a, n2i, n3.num.a, n4i)
    structural = (twist(x) == x) and (membership(x) is not None)
    if (coords is not None) != structural:
        raise AssertionError(f"lattice membership oracles disagree on {x}")
    return None if coords is None else A4Vector(coords)


def lattice_coords(x: QuatK) -> A4Vector:
    v = in_lattice(x)
    if v is None:
        raise ValueError(f"{x} is not in the A4 lattice")
    return v


@cache
def a4_gram() -> tuple[tuple[int, ...], ...]:
    """Gram matrix tr(v_i conj(v_j)): the A4 Cartan matrix, determinant 5."""
    g = []
    for vi in LBASIS:
        row = []
        for vj in LBASIS:
            t = (vi * vj.conj()).trace()
            if not (t.is_integral() and t.num.is_rational()):
                raise AssertionError("Gram entry not a rational integer")
            row.append(t.num.a)
        g.append(tuple(row))
    return tuple(g)


def phi_plus_lattice() -> list[list[int]]:
    """Check that phi_plus(I) = L: the 8 symmetrized Z-basis images must span
    L exactly (HNF = identity).  Returns the verified HNF."""
    cols = []
    for y in ZBASIS:
        v = in_lattice(phi_plus(y))
        if v is None:
            raise AssertionError("phi_plus of an icosian basis element left L")
        cols.append(v.zcoords)
    mat = [[cols[j][i] for j in range(8)] for i in range(4)]
    h = hnf_columns(mat)
    if h != identity_int(4):
        raise AssertionError("phi_plus(I) is a proper sublattice of L")
    return h


@dataclass(frozen=True)
class Sublattice4:
    """A finite-index sublattice of L: canonical column HNF plus its index."""
    hnf: tuple[tuple[int, ...], ...]
    index: int

    @staticmethod
    def from_columns(cols: list[tuple[int, ...]]) -> "Sublattice4":
        mat = [[col[i] for col in cols] for i in range(4)]
        h = hnf_columns(mat)
        d = det_bareiss(h)
        return Sublattice4(hnf=tuple(tuple(row) for row in h), index=d)

    def basis_vectors(self) -> list[A4Vector]:
        return [A4Vector([self.hnf[i][j] for i in range(4)]) for j in range(4)]

    def contains(self, v: A4Vector) -> bool:
        x = list(v.zcoords)
        # back-substitution against the lower-triangular HNF
        coeffs = []
        for i in range(4):
            r = x[i] - sum(self.hnf[i][j] * c for j, c in enumerate(coeffs))
            if r % self.hnf[i][i]:
                return False
            coeffs.append(r // self.hnf[i][i])
        return True

    def to_json(self) -> dict:
        ambient = []
        for v in self.basis_vectors():
            q = v.quat()
            ambient.append([str(c) for c in q.coeffs()])
        return {"hnf": [list(r) for r in self.hnf],
                "index": self.index,
                "ambient_basis": ambient}


def ssl(q: Icosian) -> Sublattice4:
    """The similar sublattice q L twist(q), of index abs_norm(nr q)^2."""
    if q.is_zero():
        raise ValueError("zero does not generate a sublattice")
    qt = twist(q.value)
    cols = []
    for v in LBASIS:
        w = lattice_coords(q.value * v * qt)
        cols.append(w.zcoords)
    return Sublattice4.from_columns(cols)


def lattice_of_ideal(q: Icosian) -> Sublattice4:
    """L(q) = phi_plus(q I), generated by symmetrizing q times the Z-basis."""
    if q.is_zero():
        raise ValueError("zero does not generate a sublattice")
    cols = []
    for y in ZBASIS:
        w = lattice_coords(phi_plus(q.value * y))
        cols.append(w.zcoords)
    mat = [[cols[j][i] for j in range(8)] for i in range(4)]
    h = hnf_columns(mat)
    return Sublattice4(hnf=tuple(tuple(row) for row in h),
                       index=det_bareiss(h))


def denominator(q: Icosian) -> int:
    """The rotation denominator: the exact square root of abs_norm(nr q)."""
    _require_generator(q)
    n = q.nr().abs_norm()
    r = isqrt(n)
    if r * r != n:
        raise AssertionError("admissible element with non-square norm")
    return r


def _require_generator(q: Icosian) -> None:
    if q.is_zero():
        raise ValueError("zero cannot generate a coincidence rotation")
    if not is_primitive(q):
        raise ValueError("generator must be primitive")
    if not is_admissible(q):
        raise ValueError("generator must be admissible")


def sigma(q: Icosian) -> int:
    """Coincidence index of the rotation generated by q."""
    _require_generator(q)
    return extension(q).sigma


def csl(q: Icosian) -> Sublattice4:
    """The coincidence site lattice L meet (1/den) q L twist(q).

    Computed as the ideal lattice L(q_alpha) of the extension, and verified
    against an exact rational lattice intersection; the two Hermite forms
    must be identical.
    """
    pair = extension(q)  # validates primitive + admissible
    main = lattice_of_ideal(pair.q_alpha)
    den = denominator(q)
    qt = twist(q.value)
    scaled_cols = []
    for v in LBASIS:
        w = lattice_coords(q.value * v * qt)
        scaled_cols.append([Fraction(c, den) for c in w.zcoords])
    m2 = [[scaled_cols[j][i] for j in range(4)] for i in range(4)]
    inter = lattice_intersection(identity_int(4), m2)
    if tuple(tuple(r) for r in inter) != main.hnf:
        raise AssertionError(f"CSL oracle mismatch for {q}")
    return main


def is_coincidence(q: Icosian) -> bool:
    """Does q (up to content) generate a rotation commensurating L?"""
    if q.is_zero():
        raise ValueError("zero quaternion")
    _, p = primitive_part(q)
    return is_admissible(p)


@dataclass(frozen=True)
class CoincidenceRotation:
    """A (possibly improper) coincidence isometry of L.

    The map is x -> (1/denominator) q x twist(q), preceded by quaternion
    conjugation when orientation is improper."""
    q: Icosian
    orientation: str          # "proper" | "improper"
    sigma: int
    denominator: int


def coincidence_rotation(q: Icosian, improper: bool = False) -> CoincidenceRotation:
    gamma, p = primitive_part(q)
    _require_generator(p)
    return CoincidenceRotation(
        q=p,
        orientation="improper" if improper else "proper",
        sigma=extension(p).sigma,
        denominator=denominator(p),
    )


def rotation_matrix(rot: CoincidenceRotation) -> list[list[Fraction]]:
    """Matrix over the L-basis (columns are images of basis vectors)."""
    den = rot.denominator
    qt = twist(rot.q.value)
    cols = []
    for v in LBASIS:
        src = v.conj() if rot.orientation == "improper" else v
        w = lattice_coords(rot.q.value * src * qt)
        cols.append([Fraction(c, den) for c in w.zcoords])
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def rotation_matrix_float(rot: CoincidenceRotation) -> list[list[float]]:
    return [[float(x) for x in row] for row in rotation_matrix(rot)]


def rotation_inverse(rot: CoincidenceRotation) -> CoincidenceRotation:
    """Inverse isometry: conj(q) for rotations, twist(q) for improper maps."""
    if rot.orientation == "proper":
        return coincidence_rotation(rot.q.conj())
    return coincidence_rotation(rot.q.twist(), improper=True)


def compose(rot1: CoincidenceRotation, rot2: CoincidenceRotation) -> CoincidenceRotation:
    """The isometry rot1 o rot2, renormalized to a primitive generator.

    Conjugation slides past a rotation by replacing its quaternion with
    conj(twist(q)); the two orientation flags add mod 2.

    Stripping the content gamma rescales the induced map by the sign of
    n(gamma) — the product of two primitive generators can pick up a content
    of the form sqrt(5)*m, whose norm is negative.  In that case the lost
    central inversion is restored through the unit t, since t x twist(t) =
    t t' x = -x.
    """
    q1, q2 = rot1.q, rot2.q
    if rot1.orientation == "improper":
        carried = Icosian.from_quat(q1.value * twist(q2.value).conj())
    else:
        carried = Icosian.from_quat(q1.value * q2.value)
    improper = (rot1.orientation == "improper") != (rot2.orientation == "improper")
    gamma, p = primitive_part(carried)
    if gamma.norm() < 0:
        p = p * TAU
    return coincidence_rotation(p, improper=improper)


@cache
def symmetry_rotations() -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
    """The 120 rotation matrices fixing L, from the norm-one units and their
    t-multiples (the latter supply the central inversion's coset)."""
    seen: dict[tuple, tuple] = {}
    for u in units_mod_center():
        for lift in (u, u * TAU):
            rot = coincidence_rotation(lift)
            if rot.sigma != 1:
                raise AssertionError("symmetry rotation with nontrivial index")
            m = rotation_matrix(rot)
            key = tuple(tuple(row) for row in m)
            seen[key] = key
    if len(seen) != 120:
        raise AssertionError(f"expected 120 symmetry rotations, got {len(seen)}")
    return tuple(seen.values())
