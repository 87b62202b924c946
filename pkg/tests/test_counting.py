"""Tests for the counting layer: the closed-form coefficients, the
brute-force shell enumeration that re-measures them, the Dirichlet-series
analytics, and the agreement between all of these."""

import json
import math
import random

import pytest

from a4csl.a4lattice import (
    coincidence_rotation,
    denominator,
    is_coincidence,
    rotation_matrix,
    sigma,
)
from a4csl.counting import (
    AsymptoticsReport,
    CeilingExceededError,
    DirichletCoeffs,
    F_BRUTEFORCE,
    F_KNOWN,
    F_ROT,
    candidate_norms,
    coefficient_table,
    dirichlet_coeffs,
    enumerate_shell,
    euler_factor,
    euler_product,
    f_known,
    f_rot,
    f_rot_prime_power,
    f_rot_sieve,
    multiplicativity_violations,
    residue_and_asymptotics,
    spectrum_check,
    zeta_form,
    _l_chi5,
    _orbit_representatives,
    _shell_vectors,
    _zeta,
)
from a4csl.golden import GoldenInt, TAU, conj_prime, lcm_golden
from a4csl.icosian import right_ideal_label, units_mod_center

SEED = 27182

F_ROT_FIRST_11 = [1, 5, 10, 20, 30, 50, 50, 80, 90, 150, 144]
F_KNOWN_FIRST_11 = [1, 5, 10, 20, 6, 50, 50, 80, 90, 30, 144]


def test_prime_power_counts_by_congruence_class():
    assert f_rot_prime_power(2, 1) == 5       # inert
    assert f_rot_prime_power(5, 1) == 30      # ramified
    assert f_rot_prime_power(11, 1) == 144    # split
    assert f_rot_prime_power(19, 1) == 400    # split the other way mod 5
    assert f_rot_prime_power(2, 2) == 20
    assert f_rot_prime_power(5, 2) == 750
    assert f_rot_prime_power(11, 2) == 17688
    with pytest.raises(ValueError):
        f_rot_prime_power(2, 0)
    with pytest.raises(ValueError):
        f_rot_prime_power(6, 1)


def test_f_rot_small_values():
    assert [f_rot(m) for m in range(1, 12)] == F_ROT_FIRST_11
    assert f_rot(1) == 1
    assert f_rot(25) == 750
    assert f_rot(121) == 17688
    with pytest.raises(ValueError):
        f_rot(0)
    with pytest.raises(ValueError):
        f_rot(-3)


def test_f_rot_is_multiplicative():
    rng = random.Random(SEED)
    for _ in range(200):
        a = rng.randint(2, 600)
        b = rng.randint(2, 600)
        if math.gcd(a, b) != 1:
            continue
        assert f_rot(a * b) == f_rot(a) * f_rot(b)


def test_f_rot_sieve_agrees_with_factored_form():
    table = f_rot_sieve(800)
    assert table[0] == 0
    for m in range(1, 801):
        assert table[m] == f_rot(m)
    with pytest.raises(ValueError):
        f_rot_sieve(0)


def test_f_known_settled_and_unsettled_indices():
    assert [f_known(m) for m in range(1, 12)] == F_KNOWN_FIRST_11
    assert f_known(25) == 150          # ramified powers divide out a 5
    assert f_known(2 ** 6) == f_rot(2 ** 6)
    assert f_known(55) == 6 * 144      # 5 * 11, both factors settled
    assert f_known(121) is None        # first split square: open
    assert f_known(242) is None
    with pytest.raises(ValueError):
        f_known(0)


def test_candidate_norms_structure():
    # below 121 no split square fits, so the only target is m itself
    for m in range(1, 51):
        cands = candidate_norms(m)
        assert cands == (GoldenInt(m),)
    three = candidate_norms(121)
    assert len(three) == 3
    assert GoldenInt(121) in three
    for d in three:
        assert d.is_totally_positive()
        assert lcm_golden(d, conj_prime(d)) == GoldenInt(121)
    with pytest.raises(ValueError):
        candidate_norms(0)


def test_shell_of_the_unit_ideal():
    shell = enumerate_shell(1)
    assert len(shell.representatives) == 1
    assert len(shell.ideals) == 1
    assert shell.ideals[0].determinant() == 1
    assert len(shell.csls) == 1
    assert shell.csls[0].index == 1
    assert shell.representatives[0].nr() == GoldenInt(1)


def test_shell_counts_match_both_formulas():
    """The enumeration re-derives f_rot (ideals) and f (CSLs) up to 12."""
    for m in range(1, 13):
        shell = enumerate_shell(m)
        assert len(shell.ideals) == f_rot(m), f"ideal count at {m}"
        assert len(shell.csls) == f_known(m), f"CSL count at {m}"


def test_shell_members_are_coincidences_of_the_right_index():
    for m in range(1, 7):
        shell = enumerate_shell(m)
        for q in shell.representatives:
            assert is_coincidence(q)
            assert sigma(q) == m
            assert denominator(q) ** 2 == q.nr().abs_norm()
        for s in shell.csls:
            assert s.index == m
        assert len({lab.hnf for lab in shell.ideals}) == len(shell.ideals)


def test_shell_labels_match_direct_ideal_labels():
    for m in (2, 3, 4, 5):
        shell = enumerate_shell(m)
        direct = sorted(right_ideal_label(q).hnf for q in shell.representatives)
        assert direct == [lab.hnf for lab in shell.ideals]


def test_unit_orbits_partition_the_norm_shell():
    for m in (2, 3, 7):
        vecs = _shell_vectors(GoldenInt(m))
        reps = _orbit_representatives(vecs)
        assert len(vecs) == 120 * len(reps)
        # canonical representatives are themselves members of the shell
        as_set = {tuple(int(v) for v in row) for row in vecs}
        for row in reps:
            assert tuple(int(v) for v in row) in as_set


def test_chain_products_equal_flat_search():
    """Prime-by-prime ideal products must reproduce the flat enumeration
    exactly, not just in count."""
    for m in (2, 3, 4, 5, 6, 9, 25):
        flat = enumerate_shell(m, csl_ceiling=0)
        chain = enumerate_shell(m, csl_ceiling=0, method="chain")
        assert [q.zcoords() for q in flat.representatives] == \
            [q.zcoords() for q in chain.representatives]
        assert flat.ideals == chain.ideals


def test_ramified_square_shell_collapses_five_to_one():
    shell = enumerate_shell(25, csl_ceiling=25)
    assert len(shell.ideals) == 750
    assert len(shell.csls) == 150
    assert len(shell.csls) == f_rot(25) // 5 == f_known(25)


def test_rotations_per_shell_come_in_batches_of_120():
    """Each enumerated generator carries 120 distinct rotation matrices:
    the 120 units up to sign, doubled by the t-lift, halved by -q ~ q."""
    units = units_mod_center()
    for m in (2, 3, 5):
        q = enumerate_shell(m).representatives[0]
        mats = set()
        for u in units:
            for lift in (u * q, (u * q) * TAU):
                rows = rotation_matrix(coincidence_rotation(lift))
                mats.add(tuple(tuple(r) for r in rows))
        assert len(mats) == 120


def test_enumeration_shell_serialises():
    shell = enumerate_shell(5)
    blob = json.loads(json.dumps(shell.to_json()))
    assert blob["m"] == 5
    assert len(blob["ideals"]) == 30
    assert len(blob["csls"]) == 6
    assert len(blob["representatives"]) == 30
    above = enumerate_shell(5, csl_ceiling=3)
    assert above.csls is None
    assert above.to_json()["csls"] is None


def test_enumeration_ceilings_and_input_errors():
    with pytest.raises(CeilingExceededError) as err:
        enumerate_shell(51)
    assert err.value.m == 51 and err.value.ceiling == 50
    with pytest.raises(ValueError):
        enumerate_shell(0)
    with pytest.raises(ValueError):
        enumerate_shell(3, method="guess")
    with pytest.raises(CeilingExceededError):
        dirichlet_coeffs(5, F_BRUTEFORCE, csl_ceiling=3)


def test_dirichlet_coefficient_vectors():
    rot = dirichlet_coeffs(11, F_ROT)
    assert list(rot.coeffs) == F_ROT_FIRST_11
    known = dirichlet_coeffs(11, F_KNOWN)
    assert list(known.coeffs) == F_KNOWN_FIRST_11
    brute = dirichlet_coeffs(5, F_BRUTEFORCE)
    assert list(brute.coeffs) == [1, 5, 10, 20, 6]
    assert rot.value(11) == 144
    assert rot.max_index == 11
    round_trip = DirichletCoeffs.from_json(json.loads(json.dumps(known.to_json())))
    assert round_trip == known
    with pytest.raises(ValueError):
        dirichlet_coeffs(0, F_ROT)
    with pytest.raises(ValueError):
        dirichlet_coeffs(4, "f_wishful")
    with pytest.raises(ValueError):
        DirichletCoeffs(which=F_ROT, coeffs=(2, 5))


def test_multiplicativity_scan():
    clean = dirichlet_coeffs(100, F_ROT)
    assert multiplicativity_violations(clean) == ()
    doctored = DirichletCoeffs(which=F_ROT, coeffs=(1, 5, 10, 20, 30, 51))
    assert multiplicativity_violations(doctored) == ((2, 3),)
    measured = dirichlet_coeffs(12, F_BRUTEFORCE, csl_ceiling=12)
    assert multiplicativity_violations(measured) == ()


def test_coefficient_table_rows_and_blanks():
    rows = coefficient_table(5, csl_ceiling=3)
    assert [r["m"] for r in rows] == [1, 2, 3, 4, 5]
    for r in rows:
        assert r["f_rot_formula"] == f_rot(r["m"])
        assert r["f_rot_bruteforce"] == f_rot(r["m"])
        assert r["f_known"] == f_known(r["m"])
    assert rows[1]["f_bruteforce"] == 5
    assert rows[3]["f_bruteforce"] is None   # above the CSL ceiling
    assert rows[4]["f_bruteforce"] is None
    with pytest.raises(ValueError):
        coefficient_table(0)


def test_euler_factor_expands_to_the_coefficient_series():
    s = 6.0
    for p in (2, 3, 5, 11, 19):
        series = 1.0 + sum(f_rot_prime_power(p, r) * float(p) ** (-r * s)
                           for r in range(1, 15))
        assert abs(euler_factor(p, s) - series) < 1e-10
    with pytest.raises(ValueError):
        euler_factor(6, 6.0)
    with pytest.raises(ValueError):
        euler_factor(2, 3.0)


def test_euler_product_converges_to_zeta_form():
    target = zeta_form(4.0)
    assert abs(euler_product(4.0, 5000) - target) < 1e-4
    # short truncations drift by the missing split-prime tails
    coarse = abs(euler_product(4.0, 200) - target)
    assert coarse < 5e-3
    assert abs(euler_product(4.0, 2000) - target) <= coarse


def test_zeta_form_matches_partial_coefficient_sums():
    table = f_rot_sieve(100000)
    for s in (5.0, 6.0):
        partial = sum(table[m] * float(m) ** -s for m in range(1, 100001))
        assert abs(zeta_form(s) - partial) < 1e-9
    with pytest.raises(ValueError):
        zeta_form(3.0)


def test_zeta_helpers_hit_closed_forms():
    assert abs(_zeta(2.0) - math.pi ** 2 / 6) < 1e-12
    assert abs(_zeta(4.0) - math.pi ** 4 / 90) < 1e-12
    assert abs(_zeta(6.0) - math.pi ** 6 / 945) < 1e-12
    dedekind2 = _zeta(2.0) * _l_chi5(2.0)
    assert abs(dedekind2 - 2 * math.pi ** 4 / (75 * math.sqrt(5))) < 1e-10
    with pytest.raises(ValueError):
        _zeta(1.0)


def test_residue_and_asymptotic_ladder():
    report = residue_and_asymptotics()
    assert isinstance(report, AsymptoticsReport)
    assert abs(report.residue - 1.258124) <= 5e-7
    assert abs(report.constant - 0.419375) <= 5e-7
    assert [row[0] for row in report.ladder] == [100, 1000, 10000]
    assert report.ladder[0][1] == sum(f_rot(m) for m in range(1, 101))
    for x, total, ratio in report.ladder:
        assert total > 0
        assert ratio == pytest.approx(total / (x ** 3 / 3))
    final = report.ladder[-1][2]
    assert abs(final - report.residue) / report.residue < 0.03
    short = residue_and_asymptotics(ladder=(50, 500))
    assert [row[0] for row in short.ladder] == [50, 500]


def test_spectrum_has_no_gaps():
    assert spectrum_check(400, shell_limit=6)
    with pytest.raises(ValueError):
        spectrum_check(0)
