"""Command-line front end: coefficient tables, the CSL of a given
generator, verification suites, and the asymptotic summary.

Exit codes are fixed for scripting: 0 success, 2 bad flags, 3 enumeration
ceiling exceeded, 4 generator not admissible, 5 unparseable generator.
Verification failures exit 1 with a JSON report on stdout.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .a4lattice import (a4_gram, coincidence_rotation, compose, csl,
                        denominator, is_coincidence, phi_plus_lattice,
                        rotation_matrix, sigma, symmetry_rotations)
from .counting import (CSL_CEILING_DEFAULT, CeilingExceededError,
                       F_BRUTEFORCE, F_KNOWN, F_ROT, IDEAL_CEILING_DEFAULT,
                       coefficient_table, dirichlet_coeffs, enumerate_shell,
                       f_known, f_rot, multiplicativity_violations,
                       residue_and_asymptotics)
from .golden import GoldenInt, GoldenNum, ONE, TAU, conj_prime, lcm_golden, render_golden
from .hnf import det_bareiss, identity_int
from .icosian import (Icosian, OBASIS, extension, is_admissible, membership,
                      primitive_part, right_ideal_label)
from .quat import QuatK, twist

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CEILING = 3
EXIT_NOT_ADMISSIBLE = 4
EXIT_PARSE = 5

_VERIFY_SEED = 20260816


class CliParseError(ValueError):
    """The quaternion literal could not be turned into an icosian."""


class CliAdmissibilityError(ValueError):
    """The generator parses but cannot define a coincidence rotation."""


@dataclass(frozen=True)
class CliConfig:
    """Resolved command options shared by the table-producing commands."""
    max_index: int = 11
    format: str = "table"
    threads: int = 1
    ideal_ceiling: int = IDEAL_CEILING_DEFAULT
    csl_ceiling: int = CSL_CEILING_DEFAULT

    def __post_init__(self) -> None:
        if self.max_index < 1:
            raise ValueError("max_index must be at least 1")
        if self.format not in ("json", "csv", "table"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


def _default_threads() -> int:
    raw = os.environ.get("A4CSL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


# -- quaternion literals ---------------------------------------------------

_IMPLICIT_MUL = re.compile(r"(?<=[0-9t)])\s*(?=[t(])")


def _eval_golden(node: ast.expr) -> GoldenNum:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return GoldenNum(node.value)
        raise CliParseError(f"only integer constants allowed, got {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id == "t":
            return GoldenNum(TAU)
        raise CliParseError(f"unknown symbol {node.id!r} (only t is defined)")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        inner = _eval_golden(node.operand)
        return inner if isinstance(node.op, ast.UAdd) else GoldenNum(0) - inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_golden(node.left)
            exp = _eval_golden(node.right)
            if exp.den != 1 or exp.num.b != 0:
                raise CliParseError("exponents must be plain integers")
            e = exp.num.a
            out = GoldenNum(1)
            factor = base if e >= 0 else base.inverse()
            for _ in range(abs(e)):
                out = out * factor
            return out
        lhs = _eval_golden(node.left)
        rhs = _eval_golden(node.right)
        if isinstance(node.op, ast.Add):
            return lhs + rhs
        if isinstance(node.op, ast.Sub):
            return lhs - rhs
        if isinstance(node.op, ast.Mult):
            return lhs * rhs
        if isinstance(node.op, ast.Div):
            return lhs / rhs
        raise CliParseError(f"operator {type(node.op).__name__} not allowed")
    raise CliParseError(f"unsupported syntax {type(node).__name__}")


def parse_golden_expr(text: str) -> GoldenNum:
    """One golden-rational component: integers and t under + - * / ^,
    with implicit multiplication as in 2t or 2(1+t)."""
    prepared = _IMPLICIT_MUL.sub("*", text.strip().replace("^", "**"))
    if not prepared:
        raise CliParseError("empty component")
    try:
        tree = ast.parse(prepared, mode="eval")
    except SyntaxError as err:
        raise CliParseError(f"bad expression {text!r}: {err.msg}") from err
    try:
        return _eval_golden(tree.body)
    except ZeroDivisionError as err:
        raise CliParseError(f"division by zero in {text!r}") from err


def parse_quaternion(text: str) -> QuatK:
    """A literal like (t,2t,0,0): four comma-separated golden components."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise CliParseError("quaternion literal must be parenthesised")
    inner = s[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise CliParseError("unbalanced parentheses")
        elif ch == "," and depth == 0:
            parts.append(inner[start:i])
            start = i + 1
    parts.append(inner[start:])
    if depth != 0:
        raise CliParseError("unbalanced parentheses")
    if len(parts) != 4:
        raise CliParseError(f"expected 4 components, got {len(parts)}")
    return QuatK(*(parse_golden_expr(p) for p in parts))


def parse_generator(text: str) -> Icosian:
    """Parse, check membership in the icosian ring, strip content, and
    insist on admissibility -- the pipeline behind `csl --q`."""
    q = parse_quaternion(text)
    member = membership(q)
    if member is None:
        raise CliParseError(f"{text!r} is not in the icosian ring")
    if member.is_zero():
        raise CliAdmissibilityError("the zero quaternion generates nothing")
    _, prim = primitive_part(member)
    if not is_admissible(prim):
        raise CliAdmissibilityError(
            f"nr = {prim.nr()} has non-square norm; not a coincidence generator")
    return prim


# -- output helpers ---------------------------------------------------------

_TABLE_COLUMNS = ("m", "f_rot_formula", "f_rot_bruteforce", "f_bruteforce",
                  "f_known")


def _cell(value) -> str:
    return "" if value is None else str(value)


def _render_rows(rows: list[dict], columns: tuple[str, ...], fmt: str,
                 out) -> None:
    if fmt == "json":
        json.dump({"rows": rows}, out, indent=2)
        out.write("\n")
        return
    if fmt == "csv":
        out.write(",".join(columns) + "\n")
        for r in rows:
            out.write(",".join(_cell(r[c]) for c in columns) + "\n")
        return
    widths = [max(len(c), *(len(_cell(r[c])) for r in rows)) for c in columns]
    out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
    for r in rows:
        out.write("  ".join(_cell(r[c]).rjust(w)
                            for c, w in zip(columns, widths)) + "\n")


# -- subcommands -------------------------------------------------------------

def cmd_coeffs(cfg: CliConfig, which: str, out) -> int:
    series = {"rot": F_ROT, "known": F_KNOWN, "brute": F_BRUTEFORCE}
    if which == "all":
        rows = [dict(r) for r in coefficient_table(
            cfg.max_index, ideal_ceiling=cfg.ideal_ceiling,
            csl_ceiling=cfg.csl_ceiling, threads=cfg.threads)]
        if cfg.format == "json":
            json.dump({"rows": rows}, out, indent=2)
            out.write("\n")
        else:
            _render_rows(rows, _TABLE_COLUMNS, cfg.format, out)
        return EXIT_OK
    name = series[which]
    coeffs = dirichlet_coeffs(cfg.max_index, name,
                              ideal_ceiling=cfg.ideal_ceiling,
                              csl_ceiling=cfg.csl_ceiling,
                              threads=cfg.threads)
    if cfg.format == "json":
        json.dump(coeffs.to_json(), out, indent=2)
        out.write("\n")
    else:
        rows = [{"m": m, name: coeffs.value(m)}
                for m in range(1, cfg.max_index + 1)]
        _render_rows(rows, ("m", name), cfg.format, out)
    return EXIT_OK


def cmd_csl(text: str, fmt: str, out) -> int:
    prim = parse_generator(text)
    ext = extension(prim)
    lattice = csl(prim)
    label = right_ideal_label(prim)
    payload = {
        "generator": str(prim),
        "sigma": sigma(prim),
        "denominator": denominator(prim),
        "alpha": render_golden(ext.alpha),
        "csl": lattice.to_json(),
        "ideal_label": label.to_json(),
    }
    if fmt == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"generator: {payload['generator']}\n")
    out.write(f"sigma: {payload['sigma']}\n")
    out.write(f"denominator: {payload['denominator']}\n")
    out.write(f"alpha: {payload['alpha']}\n")
    out.write("csl hnf (columns):\n")
    for row in lattice.to_json()["hnf"]:
        out.write("  " + "  ".join(f"{v:3d}" for v in row) + "\n")
    out.write("ambient basis:\n")
    for vec in lattice.to_json()["ambient_basis"]:
        out.write("  (" + ", ".join(vec) + ")\n")
    return EXIT_OK


def cmd_asymptotics(fmt: str, out) -> int:
    report = residue_and_asymptotics()
    if fmt == "json":
        json.dump({"residue": report.residue, "constant": report.constant,
                   "ladder": [list(r) for r in report.ladder]}, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"residue at s = 3: {report.residue:.6f}\n")
    out.write(f"asymptotic constant (residue/3): {report.constant:.6f}\n")
    out.write("partial-sum ladder:\n")
    for x, total, ratio in report.ladder:
        out.write(f"  x = {x:>6d}  sum = {total:>14d}  "
                  f"sum/(x^3/3) = {ratio:.6f}\n")
    return EXIT_OK


# -- verification suites ----------------------------------------------------

def _check(checks: list, name: str, passed: bool, detail: str = "") -> None:
    checks.append({"check": name, "passed": bool(passed), "detail": detail})


def _matmul_frac(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _golden_det4(m) -> GoldenInt:
    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = GoldenInt(0)
        for j, head in enumerate(rows[0]):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = head * det(minor)
            total = total + (term if j % 2 == 0 else -term)
        return total
    return det([list(r) for r in m])


def _rand_quat(rng: random.Random) -> QuatK:
    return QuatK(*(GoldenInt(rng.randint(-3, 3), rng.randint(-3, 3))
                   for _ in range(4)))


def _rand_icosian(rng: random.Random) -> Icosian:
    z = [rng.randint(-2, 2) for _ in range(8)]
    if not any(z):
        z[0] = 1
    return Icosian.from_zcoords(z)


def _suite_basic(checks: list) -> None:
    gram = a4_gram()
    cartan = ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -1, 2))
    _check(checks, "ambient Gram is the A4 Cartan matrix of determinant 5",
           gram == cartan and det_bareiss([list(r) for r in gram]) == 5)

    ogram = [[(bi * bj.conj()).trace().to_golden_int() for bj in OBASIS]
             for bi in OBASIS]
    _check(checks, "icosian trace Gram has unit determinant (self-duality)",
           _golden_det4(ogram).is_unit())

    rng = random.Random(_VERIFY_SEED)
    laws = True
    for _ in range(1000):
        p, q = _rand_quat(rng), _rand_quat(rng)
        if (twist(twist(p)) != p or twist(p * q) != twist(q) * twist(p)
                or twist(p + q) != twist(p) + twist(q)
                or twist(p.conj()) != twist(p).conj()):
            laws = False
            break
    _check(checks, "twist is an involutive anti-automorphism (1000 pairs)", laws)

    _check(checks, "the fixed lattice of the twist is phi_plus of the icosians",
           phi_plus_lattice() == identity_int(4))

    mats = symmetry_rotations()
    gfrac = [[Fraction(v) for v in row] for row in a4_gram()]
    ortho = all(
        _matmul_frac([[m[k][i] for k in range(4)] for i in range(4)],
                     _matmul_frac(gfrac, [list(r) for r in m])) == gfrac
        for m in mats)
    integral = all(x.denominator == 1 for m in mats for row in m for x in row)
    _check(checks, "symmetry group: 120 integral Gram-preserving rotations",
           len(mats) == len(set(mats)) == 120 and integral and ortho,
           f"count={len(mats)}")

    q2 = enumerate_shell(2).representatives[0]
    q3 = membership(QuatK(1, 1, 1, 0))
    witness = (sigma(q2) == 2 and q3 is not None and sigma(q3) == 3
               and compose(coincidence_rotation(q2),
                           coincidence_rotation(q3)).sigma == 6)
    divides = True
    tried = 0
    while tried < 25:
        qa, qb = _rand_icosian(rng), _rand_icosian(rng)
        if not (is_coincidence(qa) and is_coincidence(qb)):
            continue
        tried += 1
        ra, rb = coincidence_rotation(qa), coincidence_rotation(qb)
        rab = compose(ra, rb)
        if (ra.sigma * rb.sigma) % rab.sigma:
            divides = False
            break
        if math.gcd(ra.sigma, rb.sigma) == 1 and rab.sigma != ra.sigma * rb.sigma:
            witness = False
    _check(checks, "sigma of a product divides the sigma product; "
           "equality on a coprime witness", divides and witness)


def _suite_theorem39(checks: list, cfg: CliConfig) -> None:
    bound = cfg.max_index
    total = 0
    for m in range(1, bound + 1):
        shell = enumerate_shell(m, ideal_ceiling=max(cfg.ideal_ceiling, bound),
                                csl_ceiling=bound, threads=cfg.threads)
        for q in shell.representatives:
            lattice = csl(q)  # recomputes the intersection oracle internally
            if lattice.index != sigma(q) or sigma(q) != m:
                _check(checks, f"csl determinant equals sigma at m={m}", False,
                       f"index {lattice.index} vs sigma {sigma(q)}")
                return
            lcm = lcm_golden(q.nr(), conj_prime(q.nr()))
            if sigma(q) ** 2 != lcm.abs_norm():
                _check(checks, f"sigma squared equals N(lcm) at m={m}", False)
                return
        total += len(shell.representatives)
    _check(checks, "ideal-route CSL equals the oracle intersection; "
           f"determinant laws hold ({total} generators, sigma <= {bound})",
           True)


def _suite_counting(checks: list, cfg: CliConfig) -> None:
    bound = cfg.max_index
    for m in range(1, bound + 1):
        shell = enumerate_shell(m, ideal_ceiling=max(cfg.ideal_ceiling, bound),
                                csl_ceiling=0, threads=cfg.threads)
        if len(shell.ideals) != f_rot(m):
            _check(checks, f"ideal count equals the formula at m={m}", False,
                   f"{len(shell.ideals)} != {f_rot(m)}")
            return
    _check(checks, f"ideal counts match the closed formula for m <= {bound}",
           True)

    csl_bound = min(bound, cfg.csl_ceiling)
    mism = []
    for m in range(1, csl_bound + 1):
        shell = enumerate_shell(m, ideal_ceiling=max(cfg.ideal_ceiling, bound),
                                csl_ceiling=csl_bound, threads=cfg.threads)
        settled = f_known(m)
        if settled is not None and len(shell.csls) != settled:
            mism.append(m)
    _check(checks, f"CSL counts match the settled formula for m <= {csl_bound}",
           not mism, f"mismatches at {mism}" if mism else "")

    scan_bound = min(csl_bound, 12)
    measured = dirichlet_coeffs(scan_bound, F_BRUTEFORCE,
                                ideal_ceiling=max(cfg.ideal_ceiling, bound),
                                csl_ceiling=csl_bound, threads=cfg.threads)
    bad = multiplicativity_violations(measured)
    _check(checks, f"measured CSL counts multiplicative on m <= {scan_bound}",
           not bad, f"violations: {bad}" if bad else "")


def cmd_verify(cfg: CliConfig, suite: str, out) -> int:
    checks: list[dict] = []
    if suite == "basic":
        _suite_basic(checks)
    elif suite == "theorem39":
        _suite_theorem39(checks, cfg)
    else:
        _suite_counting(checks, cfg)
    failures = [c for c in checks if not c["passed"]]
    if failures:
        json.dump({"suite": suite, "checks": len(checks),
                   "failures": failures}, out, indent=2)
        out.write("\n")
        return 1
    for c in checks:
        out.write(f"ok - {c['check']}\n")
    out.write(f"suite {suite}: {len(checks)} checks passed\n")
    return EXIT_OK


# -- argument plumbing --------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="a4csl",
        description="Coincidence-site-lattice arithmetic for the A4 lattice")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"),
                        default="table")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker threads for enumeration "
                             "(default from A4CSL_THREADS)")
    common.add_argument("--ideal-ceiling", type=int,
                        default=IDEAL_CEILING_DEFAULT)
    common.add_argument("--csl-ceiling", type=int, default=CSL_CEILING_DEFAULT)

    p_coeffs = sub.add_parser("coeffs", parents=[common],
                              help="coefficient tables of the counting series")
    p_coeffs.add_argument("--max", type=int, default=11, dest="max_index")
    p_coeffs.add_argument("--which", choices=("rot", "known", "brute", "all"),
                          default="rot")

    p_csl = sub.add_parser("csl", parents=[common],
                           help="CSL data of one generator")
    p_csl.add_argument("--q", required=True, metavar="QUATERNION",
                       help='e.g. "(t,2t,0,0)"')

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run a verification suite")
    p_verify.add_argument("--suite", choices=("basic", "theorem39", "counting"),
                          required=True)
    p_verify.add_argument("--max", type=int, default=None, dest="max_index")

    sub.add_parser("asymptotics", parents=[common],
                   help="residue, constant, and the partial-sum ladder")
    return parser


def _config_from(args: argparse.Namespace, default_max: int) -> CliConfig:
    max_index = getattr(args, "max_index", None)
    if max_index is None:
        max_index = default_max
    return CliConfig(max_index=max_index, format=args.format,
                     threads=args.threads, ideal_ceiling=args.ideal_ceiling,
                     csl_ceiling=args.csl_ceiling)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if exit_.code else EXIT_OK
    out = sys.stdout
    try:
        if args.command == "coeffs":
            return cmd_coeffs(_config_from(args, 11), args.which, out)
        if args.command == "csl":
            return cmd_csl(args.q, args.format, out)
        if args.command == "asymptotics":
            return cmd_asymptotics(args.format, out)
        default_max = {"basic": 1, "theorem39": 20, "counting": 50}[args.suite]
        return cmd_verify(_config_from(args, default_max), args.suite, out)
    except ValueError as err:
        if isinstance(err, CliParseError):
            print(f"error: {err}", file=sys.stderr)
            return EXIT_PARSE
        if isinstance(err, CliAdmissibilityError):
            print(f"error: {err}", file=sys.stderr)
            return EXIT_NOT_ADMISSIBLE
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CeilingExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CEILING


if __name__ == "__main__":
    sys.exit(main())
