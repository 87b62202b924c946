"""Coincidence counting for the A4 lattice: formulas, enumeration, series.

The closed-form side is the multiplicative arithmetic function ``f_rot``
(rotation classes per index, in units of 120 rotations) together with its
Dirichlet series: Euler factors, a zeta-quotient closed form, the pole
residue at s = 3 and the partial-sum asymptotics.  The measured side is a
brute-force enumeration of all primitive admissible icosians of a given
coincidence index -- a short-vector search in the rank-8 norm form --
grouped into right ideals (120 unit multiples each) and further into
distinct CSLs.  The two sides are developed independently so that they can
check each other.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from .a4lattice import Sublattice4, csl
from .golden import (GoldenInt, ONE, TAU, TAU_INV,
                     canonical_associate, conj_prime, exact_div,
                     factor_golden, lcm_golden, split_prime, _trial_factor)
from .hnf import hnf_columns
from .icosian import (ICOSIAN_ONE, Icosian, RightIdealLabel, ZBASIS,
                      is_admissible, is_primitive, units_mod_center,
                      _tau_power)

IDEAL_CEILING_DEFAULT = 50
CSL_CEILING_DEFAULT = 20

F_ROT = "f_rot"
F_KNOWN = "f_known"
F_BRUTEFORCE = "f_bruteforce"


class CeilingExceededError(RuntimeError):
    """An enumeration request went above the configured resource ceiling."""

    def __init__(self, m: int, ceiling: int, what: str) -> None:
        super().__init__(f"index {m} exceeds the {what} ceiling {ceiling}")
        self.m = m
        self.ceiling = ceiling
        self.what = what


# -- the closed-form counting function ----------------------------------------

def f_rot_prime_power(p: int, r: int) -> int:
    """Rotation-class count at a prime power, by congruence class mod 5."""
    if r < 1:
        raise ValueError("exponent must be a positive integer")
    sp = split_prime(p)  # also rejects composite p
    if sp.kind == "ramified":
        return 6 * 5 ** (2 * r - 1)
    if sp.kind == "split":
        num = (p + 1) * p ** (r - 1) * (p ** (r + 1) + p ** (r - 1) - 2)
        quo, rem = divmod(num, p - 1)
        if rem:
            raise AssertionError(f"split-prime count is not an integer at {p}^{r}")
        return quo
    return p ** (2 * r) + p ** (2 * r - 2)


def f_rot(m: int) -> int:
    """Multiplicative extension of the prime-power counts; f_rot(1) = 1."""
    if m < 1:
        raise ValueError("index must be a positive integer")
    out = 1
    for p, r in _trial_factor(m):
        out *= f_rot_prime_power(p, r)
    return out


def f_known(m: int) -> int | None:
    """The CSL count f(m) where the partial formulas settle it, else None.

    Settled cases: any power of an inert prime (equal to f_rot there), any
    power of 5 (f_rot / 5), and split primes to the first power only.  The
    first unsettled index is 121.  Assumes f is multiplicative, which the
    enumeration oracle re-checks on its range.
    """
    if m < 1:
        raise ValueError("index must be a positive integer")
    out = 1
    for p, r in _trial_factor(m):
        sp = split_prime(p)
        if sp.kind == "split" and r > 1:
            return None
        piece = f_rot_prime_power(p, r)
        if sp.kind == "ramified":
            piece //= 5
        out *= piece
    return out


def f_rot_sieve(n: int) -> list[int]:
    """f_rot(m) for all m <= n at once (index 0 unused)."""
    if n < 1:
        raise ValueError("sieve bound must be positive")
    spf = list(range(n + 1))
    for i in range(2, math.isqrt(n) + 1):
        if spf[i] == i:
            for j in range(i * i, n + 1, i):
                if spf[j] == j:
                    spf[j] = i
    out = [0] * (n + 1)
    out[1] = 1
    for m in range(2, n + 1):
        p = spf[m]
        rest, r = m, 0
        while rest % p == 0:
            rest //= p
            r += 1
        out[m] = out[rest] * f_rot_prime_power(p, r)
    return out


# -- reduced-norm targets ------------------------------------------------------

def _positive_associate(x: GoldenInt) -> GoldenInt:
    """The totally positive associate of minimal trace.

    canonical_associate already minimises the trace, but on classes fixed
    by conjugation it settles on the trace-zero representative with mixed
    embedding signs; one extra factor of t lands on the positive one.
    """
    c = canonical_associate(x)
    if not c.is_totally_positive():
        c = c * TAU
        if not c.is_totally_positive():
            raise AssertionError(f"no positive associate found for {x}")
    return c


def candidate_norms(m: int) -> tuple[GoldenInt, ...]:
    """Totally positive reduced norms delta with lcm(delta, delta') = m.

    One candidate per valuation pattern: the doubled exponent at the
    ramified prime, the plain exponent at inert primes, and for each split
    pair every exponent pair (a, b) with max(a, b) = r and a = b (mod 2) --
    the parity condition is exactly admissibility of the norm.
    """
    if m < 1:
        raise ValueError("index must be a positive integer")
    cands = [ONE]
    for p, r in _trial_factor(m):
        sp = split_prime(p)
        if sp.kind == "ramified":
            local = [sp.primes[0] ** (2 * r)]
        elif sp.kind == "inert":
            local = [sp.primes[0] ** r]
        else:
            pi, pibar = sp.primes
            pats = sorted({(r, b) for b in range(r % 2, r + 1, 2)}
                          | {(a, r) for a in range(r % 2, r + 1, 2)})
            local = [pi ** a * pibar ** b for a, b in pats]
        cands = [c * loc for c in cands for loc in local]
    out = []
    for c in cands:
        d = _positive_associate(c)
        if lcm_golden(d, conj_prime(d)) != GoldenInt(m):
            raise AssertionError(f"candidate {d} has the wrong lcm for index {m}")
        out.append(d)
    return tuple(sorted(out, key=lambda d: (d.trace(), d.a, d.b)))


# -- short-vector enumeration --------------------------------------------------
#
# An icosian is an integer vector in the Z-basis; its reduced norm is a
# golden-integer-valued quadratic form, nr(x) = (x^T A x + x^T B x t) / 2
# with integer symmetric A (the rational part) and B (the t part).  The
# trace form T = 2A + B is positive definite, and so is A itself: both are
# positive combinations of the two embedded positive semidefinite Gram
# matrices, whose kernels are complementary.  nr(x) = delta is exactly the
# pair of integer equalities x^T T x = 2 tr(delta), x^T A x = 2 delta.a
# (the B part then follows), so the search walks the coordinate tree while
# holding the partial sums of BOTH definite forms at or below their
# targets.  Interval endpoints come from exact rational LDL data pushed to
# floats and widened a full unit outward, so no true solution can be lost;
# the exact integer evaluation at the leaves removes every false admit.

@dataclass(frozen=True)
class _SearchData:
    ga: np.ndarray  # (8,8) int64, rational part of the Gram of tr(y_i conj y_j)
    gb: np.ndarray  # (8,8) int64, t part
    l1: np.ndarray  # (8,8) float64, unit lower triangular, trace form
    l2: np.ndarray  # rational-part form
    d1: np.ndarray  # (8,) float64, positive diagonal
    d2: np.ndarray


def _rational_ldl(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact LDL of an integer symmetric matrix, embedded to floats; raises
    unless every pivot is positive, which is the definiteness proof."""
    n = len(mat)
    work = [[Fraction(int(mat[i][j])) for j in range(n)] for i in range(n)]
    lmat = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    dvec: list[Fraction] = []
    for k in range(n):
        dk = work[k][k]
        if dk <= 0:
            raise AssertionError("search form is not positive definite")
        dvec.append(dk)
        for i in range(k + 1, n):
            lmat[i][k] = work[i][k] / dk
        for i in range(k + 1, n):
            for j in range(k + 1, i + 1):
                work[i][j] -= lmat[i][k] * dk * lmat[j][k]
                work[j][i] = work[i][j]
    for i in range(n):  # reconstruct: the decomposition must be exact
        for j in range(n):
            acc = sum((lmat[i][k] * dvec[k] * lmat[j][k]
                       for k in range(min(i, j) + 1)), Fraction(0))
            if acc != Fraction(int(mat[i][j])):
                raise AssertionError("LDL reconstruction failed")
    lf = np.array([[float(v) for v in row] for row in lmat])
    df = np.array([float(v) for v in dvec])
    return lf, df


@cache
def _search_data() -> _SearchData:
    n = 8
    gk = [[(ZBASIS[i] * ZBASIS[j].conj()).trace().to_golden_int()
           for j in range(n)] for i in range(n)]
    ga = np.array([[gk[i][j].a for j in range(n)] for i in range(n)], np.int64)
    gb = np.array([[gk[i][j].b for j in range(n)] for i in range(n)], np.int64)
    l1, d1 = _rational_ldl(2 * ga + gb)
    l2, d2 = _rational_ldl(ga)
    return _SearchData(ga=ga, gb=gb, l1=l1, l2=l2, d1=d1, d2=d2)


def _search_targets(delta: GoldenInt) -> tuple[float, float]:
    return float(2 * delta.trace()), float(2 * delta.a)


def _content_conditions(delta: GoldenInt) -> list[tuple[int, np.ndarray]]:
    """Linear conditions mod p that characterise divisibility of every
    o-coordinate by a prime; only primes whose square divides delta can
    show up in the content of an element of norm delta."""
    out = []
    for prime, e, kind in factor_golden(delta).factors:
        if e < 2:
            continue
        if kind == "inert":
            p = prime.a
            rows = np.eye(8, dtype=np.int64)
        elif kind == "ramified":
            p = 5
            rows = np.zeros((4, 8), np.int64)
            for i in range(4):
                rows[i, i] = 1
                rows[i, 4 + i] = -2  # a = 2b mod 5 marks divisibility by root 5
        else:
            p = prime.abs_norm()
            x = (-prime.a * pow(prime.b, -1, p)) % p  # the image of t mod the prime
            rows = np.zeros((4, 8), np.int64)
            for i in range(4):
                rows[i, i] = 1
                rows[i, 4 + i] = x
        out.append((p, rows))
    return out


_WINDOW = 0.5          # float guard around exact equalities/inequalities
_BLOCK_ROWS = 1 << 15  # split search blocks beyond this many rows


def _empty_block() -> tuple[np.ndarray, ...]:
    return (np.zeros((1, 8), np.int64), np.zeros((1, 8)), np.zeros((1, 8)),
            np.zeros(1), np.zeros(1))


def _expand_level(block, i: int, data: _SearchData, t1: float, t2: float):
    xs, c1, c2, p1, p2 = block
    b1 = t1 - p1
    b2 = t2 - p2
    live = (b1 > -_WINDOW) & (b2 > -_WINDOW)
    if not live.all():
        xs, c1, c2, p1, p2 = xs[live], c1[live], c2[live], p1[live], p2[live]
        b1, b2 = b1[live], b2[live]
    if not len(xs):
        return None
    s1 = np.sqrt(np.maximum(b1, 0.0) / data.d1[i])
    s2 = np.sqrt(np.maximum(b2, 0.0) / data.d2[i])
    m1, m2 = c1[:, i], c2[:, i]
    lo = np.ceil(np.maximum(-m1 - s1, -m2 - s2)).astype(np.int64) - 1
    hi = np.floor(np.minimum(-m1 + s1, -m2 + s2)).astype(np.int64) + 1
    cnt = np.maximum(hi - lo + 1, 0)
    total = int(cnt.sum())
    if total == 0:
        return None
    idx = np.repeat(np.arange(len(lo)), cnt)
    starts = np.cumsum(cnt) - cnt
    xval = lo[idx] + (np.arange(total, dtype=np.int64) - np.repeat(starts, cnt))
    y1 = xval + m1[idx]
    y2 = xval + m2[idx]
    q1 = p1[idx] + data.d1[i] * y1 * y1
    q2 = p2[idx] + data.d2[i] * y2 * y2
    keep = (q1 <= t1 + _WINDOW) & (q2 <= t2 + _WINDOW)
    if not keep.any():
        return None
    sel, xv = idx[keep], xval[keep]
    nxs = xs[sel]
    nxs[:, i] = xv
    nc1 = c1[sel]
    nc2 = c2[sel]
    nc1[:, :i] += xv[:, None] * data.l1[i, :i][None, :]
    nc2[:, :i] += xv[:, None] * data.l2[i, :i][None, :]
    return nxs, nc1, nc2, q1[keep], q2[keep]


def _finish_level0(block, data: _SearchData, t1: float, t2: float) -> np.ndarray:
    """The last coordinate is pinned by the equality constraints, so only a
    handful of integers around the two real roots need testing."""
    xs, c1, c2, p1, p2 = block
    b1 = t1 - p1
    b2 = t2 - p2
    live = (b1 > -_WINDOW) & (b2 > -_WINDOW)
    xs, c1, c2, p1, p2 = xs[live], c1[live], c2[live], p1[live], p2[live]
    if not len(xs):
        return xs
    s1 = np.sqrt(np.maximum(b1[live], 0.0) / data.d1[0])
    m1, m2 = c1[:, 0], c2[:, 0]
    root_lo = np.floor(-m1 - s1).astype(np.int64)
    root_hi = np.floor(-m1 + s1).astype(np.int64)
    cands = np.stack([root_lo - 1, root_lo, root_lo + 1,
                      root_hi - 1, root_hi, root_hi + 1], axis=1)
    y1 = cands + m1[:, None]
    y2 = cands + m2[:, None]
    q1 = p1[:, None] + data.d1[0] * y1 * y1
    q2 = p2[:, None] + data.d2[0] * y2 * y2
    good = (np.abs(q1 - t1) <= _WINDOW) & (np.abs(q2 - t2) <= _WINDOW)
    rid, cid = np.nonzero(good)
    out = xs[rid]
    out[:, 0] = cands[rid, cid]
    return out


def _split_block(block):
    n = len(block[0])
    parts = max(1, -(-n // _BLOCK_ROWS))
    pieces = [np.array_split(arr, parts) for arr in block]
    return [tuple(p[j] for p in pieces) for j in range(parts)]


def _descend(block, data: _SearchData, t1: float, t2: float) -> np.ndarray:
    found = []
    stack = [(block, 6)]
    while stack:
        blk, lvl = stack.pop()
        if lvl == 0:
            hit = _finish_level0(blk, data, t1, t2)
            if len(hit):
                found.append(hit)
            continue
        nxt = _expand_level(blk, lvl, data, t1, t2)
        if nxt is None:
            continue
        if len(nxt[0]) > _BLOCK_ROWS:
            for part in reversed(_split_block(nxt)):
                stack.append((part, lvl - 1))
        else:
            stack.append((nxt, lvl - 1))
    if not found:
        return np.zeros((0, 8), np.int64)
    return np.concatenate(found)


def _shell_vectors(delta: GoldenInt, threads: int = 1) -> np.ndarray:
    """Every primitive icosian of reduced norm exactly delta, one
    z-coordinate row per element, deduplicated and sorted."""
    if not delta.is_totally_positive():
        raise ValueError("search target must be totally positive")
    data = _search_data()
    t1, t2 = _search_targets(delta)
    top = _expand_level(_empty_block(), 7, data, t1, t2)
    if top is None:
        return np.zeros((0, 8), np.int64)
    if threads > 1 and len(top[0]) > 1:
        parts = _split_top(top, threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda b: _descend(b, data, t1, t2), parts))
        raw = np.concatenate([c for c in chunks if len(c)] or
                             [np.zeros((0, 8), np.int64)])
    else:
        raw = _descend(top, data, t1, t2)
    if not len(raw):
        return raw
    # exact confirmation of the golden norm: x^T G x = 2 delta componentwise
    sa = ((raw @ data.ga) * raw).sum(axis=1)
    sb = ((raw @ data.gb) * raw).sum(axis=1)
    raw = raw[(sa == 2 * delta.a) & (sb == 2 * delta.b)]
    raw = np.unique(raw, axis=0)
    for p, rows in _content_conditions(delta):
        divisible = ((raw @ rows.T) % p == 0).all(axis=1)
        raw = raw[~divisible]
    return raw


def _split_top(block, parts: int):
    n = len(block[0])
    parts = min(parts, n)
    pieces = [np.array_split(arr, parts) for arr in block]
    return [tuple(p[j] for p in pieces) for j in range(parts)]


# -- grouping into right ideals ------------------------------------------------

@cache
def _unit_action() -> np.ndarray:
    """(120, 8, 8) integer matrices of right multiplication by each unit."""
    mats = []
    for u in units_mod_center():
        cols = [Icosian.from_quat(y * u.value).zcoords() for y in ZBASIS]
        mats.append(np.array(cols, np.int64).T)
    return np.stack(mats)


def _orbit_representatives(vectors: np.ndarray) -> np.ndarray:
    """One row per right ideal: the lexicographically least unit multiple."""
    if not len(vectors):
        return vectors
    action = _unit_action()
    wide = action.transpose(2, 0, 1).reshape(8, 120 * 8).astype(np.float64)
    reps = []
    for chunk in np.array_split(vectors, max(1, -(-len(vectors) // 49152))):
        orb = np.rint(chunk.astype(np.float64) @ wide).astype(np.int64)
        orb = orb.reshape(len(chunk), 120, 8)
        if abs(orb).max() < 128:
            # small coordinates: pack each orbit member into one big-endian
            # word so the lexicographic minimum is a single argmin
            packed = (orb + 128).astype(np.uint8)
            keys = np.ascontiguousarray(packed.reshape(len(chunk), -1)).view(">u8")
            pick = keys.argmin(axis=1)
        else:
            big = np.int64(1) << 40
            cand = np.ones((len(chunk), 120), bool)
            for k in range(8):
                col = np.where(cand, orb[:, :, k], big)
                cand &= col == col.min(axis=1, keepdims=True)
            pick = cand.argmax(axis=1)
        reps.append(orb[np.arange(len(chunk)), pick])
    return np.unique(np.concatenate(reps), axis=0)


@cache
def _right_mult_tensor() -> np.ndarray:
    """(8, 8, 8) structure constants: T[i] @ z(q) = z(q * basis_i)."""
    mats = []
    for yi in ZBASIS:
        cols = [Icosian.from_quat(yj * yi).zcoords() for yj in ZBASIS]
        mats.append(np.array(cols, np.int64).T)
    return np.stack(mats)


def _label_of_row(row: np.ndarray, expected_det: int) -> RightIdealLabel:
    tensor = _right_mult_tensor()
    mat = np.einsum("ikj,j->ki", tensor, row)
    h = hnf_columns([[int(v) for v in r] for r in mat])
    label = RightIdealLabel(hnf=tuple(tuple(r) for r in h))
    if label.determinant() != expected_det:
        raise AssertionError("ideal label determinant mismatch")
    return label


# -- shells --------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationShell:
    """Everything enumerated at one coincidence index: ideal labels, their
    generators, and (within the ceiling) the distinct CSLs."""
    m: int
    representatives: tuple[Icosian, ...]
    ideals: tuple[RightIdealLabel, ...]
    csls: tuple[Sublattice4, ...] | None

    def to_json(self) -> dict:
        return {"m": self.m,
                "representatives": [q.to_json() for q in self.representatives],
                "ideals": [lab.to_json() for lab in self.ideals],
                "csls": None if self.csls is None
                else [s.to_json() for s in self.csls]}


@dataclass
class _ShellEntry:
    reps: tuple[Icosian, ...]
    labels: tuple[RightIdealLabel, ...]
    csls: tuple[Sublattice4, ...] | None


_SHELL_CACHE: dict[tuple[int, str], _ShellEntry] = {}


def _instantiate(rows: np.ndarray, delta: GoldenInt) -> tuple[Icosian, ...]:
    reps = tuple(Icosian.from_zcoords(tuple(int(v) for v in row)) for row in rows)
    for q in reps:
        if q.nr() != delta:
            raise AssertionError(f"representative norm drifted from {delta}")
        if not is_primitive(q):
            raise AssertionError("representative is not primitive")
    return reps


def _reps_search(delta: GoldenInt, threads: int) -> tuple[Icosian, ...]:
    vecs = _shell_vectors(delta, threads)
    canon = _orbit_representatives(vecs)
    if 120 * len(canon) != len(vecs):
        raise AssertionError("unit action on the norm shell is not free")
    return _instantiate(canon, delta)


_CHAIN_CACHE: dict[tuple[int, int], tuple[Icosian, ...]] = {}


def _prime_ideal_reps(prime: GoldenInt, threads: int) -> tuple[Icosian, ...]:
    target = _positive_associate(prime)
    reps = _reps_search(target, threads)
    if len(reps) != prime.abs_norm() + 1:
        raise AssertionError(f"prime shell at {prime} has {len(reps)} ideals")
    return reps


def _chain_reps(delta: GoldenInt, threads: int = 1) -> tuple[Icosian, ...]:
    """Primitive right-ideal representatives of norm delta by repeated
    multiplication with prime shells.

    Unique factorisation of primitive icosians along any factorisation of
    the norm makes the rep-by-rep products cover every ideal; an orbit
    dedup collapses unit migration and a content filter drops the
    backtracking products.  Practical for norms whose trace puts the flat
    search out of reach.
    """
    key = (delta.a, delta.b)
    got = _CHAIN_CACHE.get(key)
    if got is not None:
        return got
    f = factor_golden(delta)
    if not f.factors:
        canon = _orbit_representatives(
            np.array([ICOSIAN_ONE.zcoords()], np.int64))
        reps = _instantiate(canon, delta)
    else:
        prime = f.factors[-1][0]
        rest = _positive_associate(exact_div(delta, prime))
        left = _chain_reps(rest, threads)
        shell = _prime_ideal_reps(prime, threads)
        ratio = exact_div(delta, rest * _positive_associate(prime))
        k = _tau_power(ratio)
        if k % 2:
            raise AssertionError("norm ratio of a chain step is not a square unit")
        scale = TAU ** (k // 2) if k >= 0 else TAU_INV ** (-k // 2)
        rows = np.array([((r * s) * scale).zcoords()
                         for r in left for s in shell], np.int64)
        for p, cond in _content_conditions(delta):
            divisible = ((rows @ cond.T) % p == 0).all(axis=1)
            rows = rows[~divisible]
        canon = _orbit_representatives(rows)
        reps = _instantiate(canon, delta)
    _CHAIN_CACHE[key] = reps
    return reps


def enumerate_shell(m: int, *, ideal_ceiling: int = IDEAL_CEILING_DEFAULT,
                    csl_ceiling: int = CSL_CEILING_DEFAULT, threads: int = 1,
                    method: str = "search") -> EnumerationShell:
    """Enumerate the full coincidence shell of index m.

    Candidate reduced norms come from the valuation patterns; each norm
    shell is enumerated (flat search by default, prime-chain products on
    request), grouped into right ideals, and labelled.  CSLs are computed
    and deduplicated only for m within the CSL ceiling -- they are the
    expensive part -- and come back as None above it.
    """
    if m < 1:
        raise ValueError("index must be a positive integer")
    if method not in ("search", "chain"):
        raise ValueError(f"unknown enumeration method {method!r}")
    if m > ideal_ceiling:
        raise CeilingExceededError(m, ideal_ceiling, "ideal enumeration")
    entry = _SHELL_CACHE.get((m, method))
    if entry is None:
        reps: list[Icosian] = []
        for delta in candidate_norms(m):
            if method == "search":
                reps.extend(_reps_search(delta, threads))
            else:
                reps.extend(_chain_reps(delta, threads))
        for q in reps:
            if not is_admissible(q):
                raise AssertionError("enumerated generator is not admissible")
        reps.sort(key=lambda q: q.zcoords())
        labels = []
        for q in reps:
            labels.append(_label_of_row(np.array(q.zcoords(), np.int64),
                                        q.nr().abs_norm() ** 2))
        if len({lab.hnf for lab in labels}) != len(labels):
            raise AssertionError("distinct orbits produced an equal ideal label")
        labels.sort(key=lambda lab: lab.hnf)
        entry = _ShellEntry(reps=tuple(reps), labels=tuple(labels), csls=None)
        _SHELL_CACHE[(m, method)] = entry
    csls = None
    if m <= csl_ceiling:
        if entry.csls is None:
            seen: dict[tuple, Sublattice4] = {}
            for q in entry.reps:
                s = csl(q)
                seen.setdefault(s.hnf, s)
            entry.csls = tuple(seen[k] for k in sorted(seen))
        csls = entry.csls
    return EnumerationShell(m=m, representatives=entry.reps,
                            ideals=entry.labels, csls=csls)


# -- coefficient vectors -------------------------------------------------------

@dataclass(frozen=True)
class DirichletCoeffs:
    """Coefficient vector of one of the counting series, indexed 1..N.

    Entries are positive integers; None marks indices that the partial
    formulas for f leave unsettled (f_known only, first at 121).
    """
    which: str
    coeffs: tuple

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("a counting series starts with coefficient 1")

    @property
    def max_index(self) -> int:
        return len(self.coeffs)

    def value(self, m: int):
        return self.coeffs[m - 1]

    def to_json(self) -> dict:
        return {"which": self.which, "coeffs": list(self.coeffs)}

    @staticmethod
    def from_json(data: dict) -> "DirichletCoeffs":
        return DirichletCoeffs(which=data["which"],
                               coeffs=tuple(data["coeffs"]))


def dirichlet_coeffs(n: int, which: str, *,
                     ideal_ceiling: int = IDEAL_CEILING_DEFAULT,
                     csl_ceiling: int = CSL_CEILING_DEFAULT,
                     threads: int = 1) -> DirichletCoeffs:
    """The first n coefficients of the requested counting series.

    f_rot comes from the closed formula (with its multiplicativity
    re-verified along the way), f_known from the partial formulas, and
    f_bruteforce from CSL enumeration -- the latter raises above the
    ceiling rather than silently truncating.
    """
    if n < 1:
        raise ValueError("need at least one coefficient")
    if which == F_ROT:
        table = f_rot_sieve(n)
        vals = table[1:]
        for m in range(2, n + 1):
            p = _trial_factor(m)[0][0]
            rest, pk = m, 1
            while rest % p == 0:
                rest //= p
                pk *= p
            if table[m] != table[pk] * table[rest]:
                raise AssertionError(f"f_rot failed multiplicativity at {m}")
    elif which == F_KNOWN:
        vals = [f_known(m) for m in range(1, n + 1)]
    elif which == F_BRUTEFORCE:
        vals = []
        for m in range(1, n + 1):
            if m > csl_ceiling:
                raise CeilingExceededError(m, csl_ceiling, "CSL enumeration")
            shell = enumerate_shell(m, ideal_ceiling=max(ideal_ceiling, m),
                                    csl_ceiling=csl_ceiling, threads=threads)
            vals.append(len(shell.csls))
    else:
        raise ValueError(f"unknown series {which!r}")
    return DirichletCoeffs(which=which, coeffs=tuple(vals))


def coefficient_table(n: int, *, ideal_ceiling: int = IDEAL_CEILING_DEFAULT,
                      csl_ceiling: int = CSL_CEILING_DEFAULT,
                      threads: int = 1) -> tuple[dict, ...]:
    """Side-by-side rows of all four counts, None where out of reach.

    Columns: m, f_rot_formula, f_rot_bruteforce, f_bruteforce, f_known.
    Unlike dirichlet_coeffs this never raises on the ceiling; the table is
    for eyeballing, blanks carry information.
    """
    if n < 1:
        raise ValueError("need at least one row")
    rows = []
    for m in range(1, n + 1):
        row = {"m": m, "f_rot_formula": f_rot(m), "f_rot_bruteforce": None,
               "f_bruteforce": None, "f_known": f_known(m)}
        if m <= ideal_ceiling:
            shell = enumerate_shell(m, ideal_ceiling=ideal_ceiling,
                                    csl_ceiling=csl_ceiling, threads=threads)
            row["f_rot_bruteforce"] = len(shell.ideals)
            if shell.csls is not None:
                row["f_bruteforce"] = len(shell.csls)
        rows.append(row)
    return tuple(rows)


def multiplicativity_violations(series: DirichletCoeffs) -> tuple[tuple[int, int], ...]:
    """Coprime pairs (a, b) with ab in range where value(a)value(b) != value(ab).

    Multiplicativity of the measured CSL counts is a hypothesis to confirm,
    not an axiom; callers decide what a non-empty answer means.
    """
    n = series.max_index
    bad = []
    for a in range(2, n + 1):
        for b in range(a, n + 1):
            if a * b > n:
                break
            if math.gcd(a, b) != 1:
                continue
            va, vb, vab = series.value(a), series.value(b), series.value(a * b)
            if va is None or vb is None or vab is None:
                continue
            if va * vb != vab:
                bad.append((a, b))
    return tuple(bad)


# -- the Dirichlet series as an analytic object --------------------------------

def _hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta by Euler-Maclaurin through the eighth Bernoulli number;
    with the fixed cutoff this is far below 1e-12 absolute error for the
    arguments used here (s >= 2, 0 < a <= 1)."""
    if s <= 1.0:
        raise ValueError("series argument must exceed 1")
    cutoff = 64
    total = 0.0
    for k in range(cutoff):
        total += (k + a) ** -s
    x = cutoff + a
    total += x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** -s
    for k, b2k in ((1, 1.0 / 6.0), (2, -1.0 / 30.0),
                   (3, 1.0 / 42.0), (4, -1.0 / 30.0)):
        rising = 1.0
        for j in range(2 * k - 1):
            rising *= s + j
        total += b2k / math.factorial(2 * k) * rising * x ** (-s - 2 * k + 1)
    return total


def _zeta(s: float) -> float:
    return _hurwitz_zeta(s, 1.0)


def _l_chi5(s: float) -> float:
    """L-series of the quadratic character mod 5 (+1 at 1 and 4, -1 at 2, 3)."""
    return 5.0 ** -s * (_hurwitz_zeta(s, 0.2) + _hurwitz_zeta(s, 0.8)
                        - _hurwitz_zeta(s, 0.4) - _hurwitz_zeta(s, 0.6))


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(flags[i * i::i]))
    return [i for i in range(2, n + 1) if flags[i]]


def euler_factor(p: int, s: float) -> float:
    """The p-local factor of the rotation series, by congruence class."""
    if s <= 3.0:
        raise ValueError("the series converges only for s > 3")
    sp = split_prime(p)  # rejects composite p
    pf = float(p)
    if sp.kind == "ramified":
        return (1.0 + 5.0 ** (1.0 - s)) / (1.0 - 5.0 ** (2.0 - s))
    if sp.kind == "split":
        return ((1.0 + pf ** -s) * (1.0 + pf ** (1.0 - s))
                / ((1.0 - pf ** (1.0 - s)) * (1.0 - pf ** (2.0 - s))))
    return (1.0 + pf ** -s) / (1.0 - pf ** (2.0 - s))


def euler_product(s: float, p_limit: int) -> float:
    """Partial Euler product over primes up to p_limit."""
    out = 1.0
    for p in _primes_upto(p_limit):
        out *= euler_factor(p, s)
    return out


def zeta_form(s: float) -> float:
    """The closed zeta-quotient form of the rotation series."""
    if s <= 3.0:
        raise ValueError("the series converges only for s > 3")
    dedekind = _zeta(s - 1.0) * _l_chi5(s - 1.0)
    return (dedekind / (1.0 + 5.0 ** -s)
            * _zeta(s) * _zeta(s - 2.0) / (_zeta(2.0 * s) * _zeta(2.0 * s - 2.0)))


@dataclass(frozen=True)
class AsymptoticsReport:
    """Pole data of the rotation series and the partial-sum ladder
    (x, sum up to x, sum normalised by x^3/3)."""
    residue: float
    constant: float
    ladder: tuple[tuple[int, int, float], ...]


def residue_and_asymptotics(ladder: tuple[int, ...] = (100, 1000, 10000)
                            ) -> AsymptoticsReport:
    """Residue at s = 3 via the closed form, cross-checked two ways.

    The closed form (450 sqrt5 / pi^6) zeta(3) must agree with the
    special-value route through zeta_K(2), zeta(4), zeta(6); the numeric
    Dedekind value at 2 must match its closed form as well.  The ladder
    reports how fast the partial sums settle onto residue * x^3 / 3.
    """
    z3 = _zeta(3.0)
    residue = 450.0 * math.sqrt(5.0) / math.pi ** 6 * z3
    zk2 = 2.0 * math.pi ** 4 / (75.0 * math.sqrt(5.0))
    alt = (125.0 / 126.0) * zk2 * z3 / ((math.pi ** 4 / 90.0)
                                        * (math.pi ** 6 / 945.0))
    if abs(residue - alt) > 1e-12:
        raise AssertionError("residue routes disagree")
    if abs(_zeta(2.0) * _l_chi5(2.0) - zk2) > 1e-9:
        raise AssertionError("Dedekind zeta special value drifted")
    top = max(ladder)
    table = f_rot_sieve(top)
    marks = sorted(set(ladder))
    rows = []
    running = 0
    for m in range(1, top + 1):
        running += table[m]
        if m == marks[0]:
            rows.append((m, running, running / (m ** 3 / 3.0)))
            marks.pop(0)
            if not marks:
                break
    return AsymptoticsReport(residue=residue, constant=residue / 3.0,
                             ladder=tuple(rows))


def spectrum_check(n: int, *, shell_limit: int = CSL_CEILING_DEFAULT,
                   threads: int = 1) -> bool:
    """Every index occurs: positive formula counts up to n, and non-empty
    enumerated shells up to the given limit."""
    if n < 1:
        raise ValueError("need a positive range")
    table = f_rot_sieve(n)
    if any(table[m] <= 0 for m in range(1, n + 1)):
        return False
    for m in range(1, min(n, shell_limit) + 1):
        shell = enumerate_shell(m, ideal_ceiling=max(IDEAL_CEILING_DEFAULT, m),
                                csl_ceiling=0, threads=threads)
        if not shell.ideals:
            return False
    return True
