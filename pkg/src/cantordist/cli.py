"""Command-line front end: every computation as a subcommand emitting CSV or JSON."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from . import __version__
from .asymptotics import CONSTANTS, gamma_fn, unconstrained_run_asymptotic, zeta_fn
from .bitsums import bitsum_density, bitsum_series, empirical_bitsum, series_ratios
from .ensembles import (
    MAX_ENUMERATION,
    EnsembleKind,
    count,
    enumerate_strings,
    f_value,
    fibonacci_word,
    is_member,
    parse_theta,
    sample_uniform,
)
from .errors import InfeasibleSizeError, ParameterError, UnsupportedPairError
from .exactnum import PHI, PSI, DecimalApprox, approximate, format_exact, render_fixed
from .moments import empirical_moments, log_moments, moments, transfer_moments
from .orderstats import (
    float_error_bound,
    monte_carlo_order_stat,
    order_stats,
    order_stats_float,
)
from .runs import empirical_longest_run, expected_longest_run, no_run_gf
from .genfunc import gf_coefficients
from .verify import run_oracle_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add_exact(self, index, value, digits: int) -> None:
        approx = approximate(value, digits)
        self.rows.append((str(index), format_exact(value), approx.value, str(approx.error_bound)))

    def add_approx(self, index, value: DecimalApprox, exact: str = "") -> None:
        self.rows.append((str(index), exact, value.value, str(value.error_bound)))

    def add_float(self, index, x: float, rel_err: float, digits: int) -> None:
        """Float results: exact_string is the binary value the float holds."""
        exact = Fraction(x)
        bound = Decimal(abs(x) * rel_err + 10.0**-digits).quantize(
            Decimal(1).scaleb(-digits - 3), rounding="ROUND_UP")
        self.rows.append((str(index), format_exact(exact), render_fixed(exact, digits), str(bound)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "exact", "decimal", "error_bound"])
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "rows": [dict(zip(("index", "exact", "decimal", "error_bound"), r)) for r in self.rows],
            "metadata": self.metadata,
        }
        return json.dumps(payload, indent=2) + "\n"


def _enum_limit(args, m: int) -> int | None:
    """--max-len lifts the count cap for lengths up to it."""
    if args.max_len is not None and m <= args.max_len:
        return count(args.kind, m)
    return None


# --- subcommands --------------------------------------------------------------

def cmd_moments(args, rec: OutputRecord) -> int:
    if args.empirical is not None:
        vals = empirical_moments(args.kind, args.theta, args.empirical, args.n,
                                 _enum_limit(args, args.empirical))
    elif args.length is not None:
        vals = transfer_moments(args.kind, args.theta, args.length, args.n)
    elif args.method == "log":
        logs = log_moments(args.kind, args.theta, args.n)
        rel = float_error_bound(args.n)
        for n, lv in enumerate(logs):
            rec.add_float(f"mu[{n}]", math.exp(lv), rel, args.digits)
        return EXIT_OK
    else:
        vals = moments(args.kind, args.theta, args.n, args.digits).values
    for n, v in enumerate(vals):
        rec.add_exact(f"mu[{n}]", v, args.digits)
    if len(vals) > 2:
        rec.add_exact("variance", vals[2] - vals[1] * vals[1], args.digits)
    return EXIT_OK


def cmd_order_stats(args, rec: OutputRecord) -> int:
    if args.method == "mc":
        est = monte_carlo_order_stat(args.kind, args.theta, args.n, args.which, args.samples,
                                     args.prefix_len, args.seed, args.jobs)
        rec.rows.append((f"{args.which}[{args.n}]", format_exact(Fraction(est.mean)),
                         f"{est.mean:.{args.digits}f}", f"{est.stderr:.3e}"))
        print(f"monte carlo: {est.samples} samples, stderr {est.stderr:.3e}", file=sys.stderr)
        return EXIT_OK
    if args.method == "float":
        xi, gap = order_stats_float(args.kind, args.theta, args.n)
        rel = float_error_bound(args.n)
        for n in range(1, args.n + 1):
            rec.add_float(f"xi[{n}]", float(xi[n - 1]), rel, args.digits)
            rec.add_float(f"gap[{n}]", float(gap[n - 1]), rel, args.digits)
        return EXIT_OK
    table = order_stats(args.kind, args.theta, args.n)
    for n in range(1, args.n + 1):
        rec.add_exact(f"xi[{n}]", table.xi[n - 1], args.digits)
        rec.add_exact(f"eta[{n}]", table.eta[n - 1], args.digits)
    return EXIT_OK


def cmd_bitsums(args, rec: OutputRecord) -> int:
    if args.density:
        d = bitsum_density(args.kind, args.digits)
        rec.add_exact("mean", d.mean_density, args.digits)
        rec.add_exact("variance", d.variance_density, args.digits)
        return EXIT_OK
    if args.ratio:
        mean, var = series_ratios(args.kind, args.n)
        rec.add_exact(f"mean_ratio[{args.n}]", mean, args.digits)
        rec.add_exact(f"variance_ratio[{args.n}]", var, args.digits)
        return EXIT_OK
    if args.empirical is not None:
        m = args.empirical
        total, total_sq, mean, var = empirical_bitsum(args.kind, m, _enum_limit(args, m))
        for name, v in (("a", total), ("b", total_sq), ("mean", mean), ("variance", var)):
            rec.add_exact(f"{name}[{m}]", v, args.digits)
        return EXIT_OK
    s = bitsum_series(args.kind, args.n)
    for n in range(args.n + 1):
        for name, seq in (("a", s.a), ("b", s.b), ("c", s.c)):
            rec.add_exact(f"{name}[{n}]", seq[n], args.digits)
    return EXIT_OK


def cmd_runs(args, rec: OutputRecord) -> int:
    if args.empirical is not None:
        m = args.empirical
        rec.add_exact(f"E[{m}]", empirical_longest_run(args.kind, args.bit, m, _enum_limit(args, m)),
                      args.digits)
        return EXIT_OK
    if args.k is not None:
        coeffs = gf_coefficients(no_run_gf(args.kind, args.bit, args.k), args.n)
        for n in range(args.n + 1):
            rec.add_exact(f"no_run[{n}]", coeffs[n], args.digits)
        return EXIT_OK
    table = expected_longest_run(args.kind, args.bit, args.n)
    for n in range(args.n + 1):
        rec.add_exact(f"numerator[{n}]", table.numerators[n], args.digits)
        rec.add_exact(f"E[{n}]", table.expectations[n], args.digits)
    return EXIT_OK


CONSTANT_NAMES = sorted(CONSTANTS) + ["gamma", "zeta", "run-asymptotic"]


def cmd_constants(args, rec: OutputRecord) -> int:
    names = CONSTANT_NAMES if args.name == "all" else [args.name]
    for name in names:
        if name == "gamma":
            rec.add_approx(f"gamma({args.arg})", gamma_fn(args.arg, args.digits))
        elif name == "zeta":
            rec.add_approx(f"zeta({args.arg})", zeta_fn(args.arg, args.digits))
        elif name == "run-asymptotic":
            rec.add_approx(f"run-asymptotic({args.n})",
                           unconstrained_run_asymptotic(args.n, args.digits))
        else:
            c = CONSTANTS[name](digits=args.digits)
            exact = {"phi": PHI, "psi": PSI}.get(name)
            rec.add_approx(name, c.value, format_exact(exact) if exact is not None else "")
            print(f"{name}: {c.method}", file=sys.stderr)
    return EXIT_OK


def cmd_sample(args, rec: OutputRecord) -> int:
    for i in range(args.samples):
        w = sample_uniform(args.kind, args.m, args.seed + i)
        rec.add_exact(str(w) or "-", f_value(args.theta, w), args.digits)
    return EXIT_OK


def cmd_enumerate(args, rec: OutputRecord) -> int:
    if args.count_only:
        rec.add_exact(f"count[{args.m}]", count(args.kind, args.m), args.digits)
        return EXIT_OK
    for w in enumerate_strings(args.kind, args.m, _enum_limit(args, args.m)):
        rec.add_exact(str(w) or "-", f_value(args.theta, w), args.digits)
    return EXIT_OK


def cmd_fib_word(args, rec: OutputRecord) -> int:
    w = fibonacci_word(args.n)
    ones = w.bitsum()
    rec.add_exact("ones", ones, args.digits)
    rec.add_exact("density", Fraction(ones, args.n), args.digits)
    rec.add_exact("limit", 1 - 1 / PHI, args.digits)
    rec.add_exact("is_solus", int(is_member(EnsembleKind.SOLUS, w)), args.digits)
    if args.n <= 80:
        print(f"word: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, rec: OutputRecord) -> int:
    results = run_oracle_suite(args.max_len if args.max_len is not None else 16, args.theta)
    ok = True
    for r in results:
        rec.rows.append((r.name, str(len(r.failures)), str(len(r.failures)), "0"))
        status = "ok" if r.passed else "FAILED"
        print(f"{r.name}: {r.cases} cases, {status}", file=sys.stderr)
        for msg in r.failures[:5]:
            print(f"  {msg}", file=sys.stderr)
        ok = ok and r.passed
    return EXIT_OK if ok else EXIT_FAIL


# --- argument parsing ---------------------------------------------------------

def _theta(text: str) -> Fraction:
    try:
        return parse_theta(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", choices=[k.value for k in EnsembleKind], default="unconstrained")
    common.add_argument("--theta", type=_theta, default=Fraction(1, 3), help="exact fraction p/q")
    common.add_argument("--digits", type=int, default=10)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-len", type=_nonneg, default=None,
                        help=f"allow enumeration up to this length past the {MAX_ENUMERATION:.0e} cap")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="cantordist",
                                     description="Exact statistics of Cantor-type distributions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common], help="limiting or finite-length moments")
    p.add_argument("--n", type=_nonneg, default=10)
    p.add_argument("--method", choices=["exact", "log"], default="exact")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--length", type=_nonneg, help="finite-length moments by transfer matrix")
    g.add_argument("--empirical", type=_nonneg, metavar="M", help="finite-length moments by enumeration")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("order-stats", parents=[common], help="expected min/max of n draws")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--method", choices=["exact", "float", "mc"], default="exact")
    p.add_argument("--which", choices=["min", "max"], default="min")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--prefix-len", type=int, default=40)
    p.set_defaults(func=cmd_order_stats)

    p = sub.add_parser("bitsums", parents=[common], help="bitsum series and densities")
    p.add_argument("--n", type=_nonneg, default=10)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--density", action="store_true")
    g.add_argument("--ratio", action="store_true", help="a_n/(n f) and c_n/(n f^2) at --n")
    g.add_argument("--empirical", type=_nonneg, metavar="M")
    p.set_defaults(func=cmd_bitsums)

    p = sub.add_parser("runs", parents=[common], help="expected longest runs")
    p.add_argument("--bit", type=int, choices=[0, 1], default=1)
    p.add_argument("--n", type=_nonneg, default=10)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=int, help="coefficients of the no-run-of-k GF")
    g.add_argument("--empirical", type=_nonneg, metavar="M")
    p.set_defaults(func=cmd_runs)

    p = sub.add_parser("constants", parents=[common], help="asymptotic and series constants")
    p.add_argument("--name", choices=CONSTANT_NAMES + ["all"], default="all")
    p.add_argument("--arg", type=_theta_free, default=Fraction(2), help="argument for gamma/zeta")
    p.add_argument("--n", type=int, default=1024, help="n for run-asymptotic")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sample", parents=[common], help="uniform members with their F values")
    p.add_argument("--m", type=_nonneg, default=20)
    p.add_argument("--samples", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", parents=[common], help="all members of length m")
    p.add_argument("--m", type=_nonneg, default=4)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fib-word", parents=[common], help="Fibonacci word prefix statistics")
    p.add_argument("--n", type=int, default=10**6)
    p.set_defaults(func=cmd_fib_word)

    p = sub.add_parser("verify", parents=[common], help="oracle equivalence suite")
    p.add_argument("--suite", choices=["oracle"], default="oracle")
    p.set_defaults(func=cmd_verify)
    return parser


def _theta_free(text: str) -> Fraction:
    """Any exact positive rational (gamma/zeta arguments are not theta)."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact fraction, got {text!r}") from None
    if "." in text:
        raise argparse.ArgumentTypeError("decimals are not accepted; use p/q")
    return value


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    params = {k: (str(v) if isinstance(v, Fraction) else v)
              for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    rec = OutputRecord(args.command, params, metadata={"version": __version__, "seed": args.seed})
    start = time.perf_counter()
    try:
        code = args.func(args, rec)
    except InfeasibleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ParameterError, UnsupportedPairError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    # timing stays on stderr so stdout is byte-identical across runs
    print(f"{args.command}: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    sys.stdout.write(rec.to_json() if args.format == "json" else rec.to_csv())
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
