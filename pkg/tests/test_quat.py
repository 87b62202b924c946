"""Tests for quaternion arithmetic over Q(sqrt 5)."""

import random

import pytest

from a4csl.golden import TAU, TAU2, SQRT5, GoldenInt, GoldenNum
from a4csl.quat import QUAT_ONE, QUAT_ZERO, QuatK, nr, phi_minus, phi_plus, trace, twist

SEED = 90125

I = QuatK(0, 1, 0, 0)
J = QuatK(0, 0, 1, 0)
K = QuatK(0, 0, 0, 1)


def rand_quat(rng, span=9, den_choices=(1, 1, 2)):
    return QuatK(*(GoldenNum(GoldenInt(rng.randint(-span, span),
                                       rng.randint(-span, span)),
                             rng.choice(den_choices))
                   for _ in range(4)))


def test_multiplication_table():
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K
    assert I * I == -QUAT_ONE
    assert J * J == -QUAT_ONE
    assert K * K == -QUAT_ONE


def test_ring_axioms_sampled():
    rng = random.Random(SEED)
    for _ in range(80):
        p, q, r = (rand_quat(rng) for _ in range(3))
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert (p + q) * r == p * r + q * r


def test_norm_and_trace_are_scalar():
    rng = random.Random(SEED + 1)
    for _ in range(100):
        q = rand_quat(rng)
        n = q.nr()
        assert q * q.conj() == QuatK(n)
        assert q.conj() * q == QuatK(n)
        assert q + q.conj() == QuatK(q.trace())


def test_norm_multiplicative():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        p, q = rand_quat(rng), rand_quat(rng)
        assert (p * q).nr() == p.nr() * q.nr()
        assert (p * q).conj() == q.conj() * p.conj()


def test_central_scalar_norm():
    rng = random.Random(SEED + 3)
    for _ in range(50):
        q = rand_quat(rng)
        alpha = GoldenNum(GoldenInt(rng.randint(-9, 9), rng.randint(-9, 9)),
                          rng.choice([1, 2, 3]))
        assert (alpha * q) == (q * alpha)
        assert (alpha * q).nr() == alpha * alpha * q.nr()


def test_twist_is_involutive_antiautomorphism():
    rng = random.Random(SEED + 4)
    for _ in range(100):
        p, q = rand_quat(rng), rand_quat(rng)
        assert twist(twist(p)) == p
        assert twist(p * q) == twist(q) * twist(p)
        assert twist(p + q) == twist(p) + twist(q)
        # twist commutes with quaternion conjugation
        assert twist(p.conj()) == twist(p).conj()


def test_twist_coordinates():
    q = QuatK(TAU, 1, GoldenInt(2, 1), GoldenInt(0, -1))
    assert twist(q) == QuatK(GoldenInt(1, -1), 1, GoldenInt(-1, 1), GoldenInt(3, -1))


def test_phi_maps():
    rng = random.Random(SEED + 5)
    s5 = GoldenNum(SQRT5)
    for _ in range(100):
        q = rand_quat(rng)
        assert phi_plus(q) == q + twist(q)
        assert phi_minus(q) == q - twist(q)
        assert phi_plus(s5 * q) == s5 * phi_minus(q)
        assert twist(phi_plus(q)) == phi_plus(q)
        assert twist(phi_minus(q)) == -phi_minus(q)


def test_trace_twist_identity():
    """(tr(u vbar))' equals tr(vtilde-bar * utilde) for all u, v."""
    rng = random.Random(SEED + 6)
    for _ in range(100):
        u, v = rand_quat(rng), rand_quat(rng)
        lhs = trace(u * v.conj()).conj_prime()
        rhs = trace(twist(v).conj() * twist(u))
        assert lhs == rhs


def test_inverse():
    rng = random.Random(SEED + 7)
    for _ in range(60):
        q = rand_quat(rng)
        if not q:
            continue
        assert q * q.inverse() == QUAT_ONE
        assert q.inverse() * q == QUAT_ONE
        assert q / q == QUAT_ONE
    with pytest.raises(ZeroDivisionError):
        QUAT_ZERO.inverse()


def test_worked_norms():
    r = QuatK(TAU, GoldenInt(0, 2), 0, 0)
    s = QuatK(TAU2, TAU, TAU, 1)
    five_tau2 = GoldenNum(GoldenInt(5) * TAU2)
    assert nr(r) == five_tau2
    assert nr(s) == five_tau2
    assert trace(r) == GoldenNum(GoldenInt(0, 2))
