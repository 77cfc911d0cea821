"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from .angles import format_angle, parse_angle, to_binary, tune_angle
from .entropy import THREADS_ENV, core_entropy, dimension_estimate_real, graph_samples, worker_count
from .errors import AngleSyntaxError, ConvergenceError, DomainError
from .families import CATALOG, FamilySpec, family_growth, family_polynomial, fit_asymptotics
from .galois import ROOT_TOL, root_cloud
from .kneading import kneading_lambda, kneading_signs, min_terms
from .spectral import DEFAULT_TOL, char_poly, growth_rate
from .symbolic import is_real_angle, kneading_sequence
from .transition import build_pair_matrix, dominant_component

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE = 0, 1, 2, 3
SUBSHIFT_DEPTH = 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(x: float) -> str:
    """Reals with 9 significant digits, no locale."""
    if x == 0:
        return "0"
    return f"{x:.9g}"


def _num(x: float):
    # JSON number carrying the same 9 significant digits as the CSV output
    return float(fmt(x))


def _angle(text: str) -> Fraction:
    try:
        return parse_angle(text)
    except AngleSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return v


def _int_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None, stdout):
    if out:
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="core-entropy",
                description="Core entropy and biaccessibility dimension from external angles.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    e = sub.add_parser("entropy", help="lambda, entropy and dimension of one angle")
    e.add_argument("angle", type=_angle)
    e.add_argument("--method", choices=("pair-matrix", "kneading", "subshift"),
                   default="pair-matrix")
    e.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    e.add_argument("--depth", type=_count, default=SUBSHIFT_DEPTH,
                   help="survivor depth for --method subshift")
    e.add_argument("--terms", type=_count, default=200,
                   help="truncation for --method kneading")
    e.add_argument("--json", action="store_true")

    g = sub.add_parser("graph", help="sample lambda over dyadic angles in [LO, HI]")
    g.add_argument("lo", type=_angle)
    g.add_argument("hi", type=_angle_or_one)
    g.add_argument("--depth", type=_count, required=True)
    g.add_argument("--out")

    m = sub.add_parser("matrix", help="pair transition matrix of an angle")
    m.add_argument("angle", type=_angle)
    m.add_argument("--dump", action="store_true")
    m.add_argument("--charpoly", action="store_true")

    f = sub.add_parser("family", help="closed-form polynomial families")
    f.add_argument("name", choices=sorted(CATALOG))
    f.add_argument("--q", type=_count)
    f.add_argument("--n", type=_count)
    f.add_argument("--fit", type=_int_range, metavar="LO..HI")

    t = sub.add_parser("tune", help="Douady substitution of binary digits")
    t.add_argument("w_minus")
    t.add_argument("w_plus")
    t.add_argument("angle", type=_angle)

    k = sub.add_parser("knead", help="kneading sequence and determinant")
    k.add_argument("angle", type=_angle)
    k.add_argument("--terms", type=_count, default=200)

    gl = sub.add_parser("galois", help="root clouds of M0, M1, M2")
    gl.add_argument("set", type=str.upper, choices=("M0", "M1", "M2"))
    gl.add_argument("--max-degree", type=_count, required=True)
    gl.add_argument("--tol", type=_positive_float, default=ROOT_TOL)
    gl.add_argument("--extended", action="store_true",
                    help="raise the enumeration caps for long batch runs")
    gl.add_argument("--out")
    return p


def _angle_or_one(text: str) -> Fraction:
    # the upper end of a graph window may be 1 itself
    if text.strip() in ("1", "1/1"):
        return Fraction(1)
    return _angle(text)


# --- commands --------------------------------------------------------------

def cmd_entropy(args, stdout):
    theta = args.angle
    if args.method == "pair-matrix":
        r = core_entropy(theta, tol=args.tol)
        lam, method = r.lam, r.method
        extra = {"preperiod": r.orbit.preperiod, "period": r.orbit.period,
                 "matrix_dim": r.matrix_dim, "iterations": r.iterations}
    else:
        mirror = min(theta, 1 - theta) if theta else theta
        if theta == 0:
            lam, method, extra = 1.0, "convention", {}
        elif not is_real_angle(mirror):
            raise DomainError(f"{format_angle(theta)} is not the angle of a real parameter")
        elif args.method == "kneading":
            kr = kneading_lambda(mirror, max(args.terms, min_terms(mirror)))
            lam, method, extra = kr.lam, "kneading", {"terms": kr.terms}
        else:
            if args.depth < 1:
                raise DomainError("depth must be >= 1")
            dim = dimension_estimate_real(mirror, args.depth)
            lam, method, extra = 2.0 ** dim, "subshift", {"depth": args.depth}
    dim = math.log(lam) / math.log(2.0)
    record = {"theta": format_angle(theta), "lambda": lam, "entropy": dim * math.log(2.0),
              "dimension": dim, "method": method, **extra}
    if args.json:
        out = {k: (_num(v) if isinstance(v, float) else v) for k, v in record.items()}
        stdout.write(json.dumps(out, sort_keys=False) + "\n")
    else:
        keys = list(record)
        stdout.write(_csv([[fmt(record[k]) if isinstance(record[k], float) else record[k]
                            for k in keys]], keys))


GRAPH_HEADER = ["theta_num", "theta_den", "preperiod", "period", "matrix_dim",
                "lambda", "dimension", "iterations"]


def cmd_graph(args, stdout):
    rows = [[r.theta.numerator, r.theta.denominator, r.orbit.preperiod, r.orbit.period,
             r.matrix_dim, fmt(r.lam), fmt(r.dimension), r.iterations]
            for r in graph_samples(args.lo, args.hi, args.depth, workers=worker_count())]
    _emit(_csv(rows, GRAPH_HEADER), args.out, stdout)


def cmd_matrix(args, stdout):
    theta = args.angle
    if theta == 0:
        raise DomainError("theta = 0 has no pair matrix")
    M = build_pair_matrix(theta)
    g = growth_rate(M)
    comp = dominant_component(M)
    lines = [
        f"theta: {format_angle(theta)}",
        f"orbit: preperiod={M.basis.preperiod} period={M.basis.period}",
        f"dimension: {M.dim}",
        f"lambda: {fmt(g.lam)}",
        f"method: {g.method}",
        f"dominant_block: size={len(comp.pairs)} index={comp.index} "
        f"primitive={'yes' if comp.primitive else 'no'}",
    ]
    if args.charpoly:
        lines.append(f"charpoly: {char_poly(M)}")
    if args.dump:
        lines.append("postcritical: " + " ".join(
            f"{j}={format_angle(a)}" for j, a in enumerate(M.basis.postcritical, 1)))
        for (j, k), col in zip(M.basis.pairs, M.columns):
            image = " + ".join((f"{c}*" if c > 1 else "") + f"{{{a},{b}}}"
                               for (a, b), c in col) or "0"
            lines.append(f"{{{j},{k}}} -> {image}")
    stdout.write("\n".join(lines) + "\n")


def cmd_family(args, stdout):
    fam = CATALOG[args.name]
    if args.fit is not None:
        if "q" in fam.params and args.q is None:
            raise UsageError(f"family {args.name} needs --q")
        fit = fit_asymptotics(args.name, args.fit, q=args.q)
        stdout.write(json.dumps({"family": args.name, "q": args.q,
                                 "n_lo": fit.ns[0], "n_hi": fit.ns[-1],
                                 "lambda0": _num(fit.lambda0), "K": _num(fit.K),
                                 "drift": _num(fit.drift), "sign": fit.sign}) + "\n")
        return
    for p in fam.params:
        if getattr(args, p) is None:
            raise UsageError(f"family {args.name} needs --{p}")
    for p in ("q", "n"):
        if getattr(args, p) is not None and p not in fam.params:
            raise UsageError(f"family {args.name} takes no --{p}")
    spec = FamilySpec(args.name, q=args.q, n=args.n)
    stdout.write(f"family: {spec}\npolynomial: {family_polynomial(spec)}\n"
                 f"root: {fmt(family_growth(spec))}\n")


def cmd_tune(args, stdout):
    try:
        a = tune_angle(args.w_minus, args.w_plus, args.angle)
    except AngleSyntaxError as exc:
        raise UsageError(str(exc)) from None
    stdout.write(f"{format_angle(a)}\t{to_binary(a)}\n")


def cmd_knead(args, stdout):
    theta = args.angle
    if theta == 0 or theta > Fraction(1, 2):
        raise DomainError("knead needs 0 < theta <= 1/2")
    if not is_real_angle(theta):
        raise DomainError(f"{format_angle(theta)} is not real-admissible")
    nu = kneading_sequence(theta)
    N = args.terms
    kr = kneading_lambda(theta, N)
    shown = kneading_signs(theta, min(N, 40)).signs
    signs = "".join("+" if s > 0 else "-" for s in shown) + ("..." if N > 40 else "")
    lines = [f"theta: {format_angle(theta)}",
             f"kneading: {nu}",
             f"resolved: {nu.resolved()}",
             f"signs: {signs}",
             f"t_star: {fmt(kr.root) if kr.root is not None else 'none'}",
             f"lambda: {fmt(kr.lam)}"]
    stdout.write("\n".join(lines) + "\n")


def cmd_galois(args, stdout):
    cloud = root_cloud(args.set, args.max_degree, tol=args.tol, extended=args.extended)
    rows = [[fmt(p.re), fmt(p.im), p.degree, p.poly_id, p.set] for p in cloud.points]
    _emit(_csv(rows, ["re", "im", "degree", "poly_id", "set"]), args.out, stdout)


COMMANDS = {"entropy": cmd_entropy, "graph": cmd_graph, "matrix": cmd_matrix,
            "family": cmd_family, "tune": cmd_tune, "knead": cmd_knead, "galois": cmd_galois}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        if args.command == "graph":
            try:
                worker_count()
            except DomainError as exc:
                raise UsageError(f"{THREADS_ENV}: {exc}") from None
        COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        msg = f"convergence failure: {exc}"
        if exc.bracket is not None:
            msg += f" (bracket {fmt(exc.bracket[0])}..{fmt(exc.bracket[1])})"
        stderr.write(msg + "\n")
        return EXIT_CONVERGENCE
    return EXIT_OK


def main():
    sys.exit(run())
