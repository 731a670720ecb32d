"""Command-line surface: expansion, Gauss-Kuzmin iteration, Monte-Carlo
validation, q_N certificates, and the bounds table.

Exit codes: 0 success, 2 usage or domain error, 3 acceptance-check failure.
Heavy numeric imports happen inside the command handlers so that the fast
commands (`qn`) stay fast.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3


def _parse_value(s: str):
    """Decimal -> float path; 'j/k' fraction -> exact path."""
    if "/" in s:
        return Fraction(s)
    return float(s)


def _write_out(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_expand(args) -> int:
    from . import cf

    try:
        x = _parse_value(args.x)
    except (ValueError, ZeroDivisionError):
        print(f"error: cannot parse value {args.x!r}", file=sys.stderr)
        return EXIT_USAGE
    exact = isinstance(x, Fraction)
    try:
        if exact:
            orbit = cf.expand_exact(args.N, x, args.n)
        else:
            orbit = cf.expand(args.N, x, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    seq = orbit.sequence
    lines = [f"path: {'exact rational' if exact else 'float'}",
             f"digits: {','.join(map(str, seq.digits))}"]
    if orbit.truncated:
        lines.append("note: expansion truncated (iterate reached 1)")
    if orbit.precision_loss:
        lines.append(f"note: digit exceeded {cf.DIGIT_CAP}; float precision exhausted")
    if seq.digits:
        xf = Fraction(x) if exact else x
        for c in cf.convergents(seq)[1:]:
            if exact:
                res = abs(xf - c.value)
                lines.append(f"p_{c.index}/q_{c.index} = {c.p}/{c.q}  |x - p/q| = {res}")
            else:
                res = abs(xf - c.p / c.q)
                lines.append(f"p_{c.index}/q_{c.index} = {c.p}/{c.q}  |x - p/q| = {res:.6e}")
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_gk(args) -> int:
    import numpy as np

    from . import transfer
    from .grids import GridFunction, Kind

    t = transfer.default_tail_policy(args.N, args.grid)
    if args.initial == "uniform":
        F0 = transfer.lebesgue_cdf(args.N, args.grid)
    else:
        try:
            data = np.loadtxt(args.initial, delimiter=",", skiprows=1, ndmin=2)
            vals = data[:, 1]
            if vals.size != args.grid + 1:
                raise ValueError(
                    f"CSV has {vals.size} rows, grid needs {args.grid + 1}")
            F0 = GridFunction(args.N, Kind.CDF, vals)
        except (OSError, ValueError, IndexError) as exc:
            print(f"error: bad initial CDF: {exc}", file=sys.stderr)
            return EXIT_USAGE
    report = transfer.iterate_gk(args.N, F0, args.steps, t)
    _write_out(report.to_json() + "\n", args.out)
    if report.floor_reached_before_fit:
        return EXIT_OK
    if report.fitted_rate <= report.q_ref + args.rate_tolerance:
        return EXIT_OK
    print(f"check failed: fitted rate {report.fitted_rate:.6f} exceeds "
          f"q_N + {args.rate_tolerance} = {report.q_ref + args.rate_tolerance:.6f}",
          file=sys.stderr)
    return EXIT_CHECK_FAILED


def cmd_qn(args) -> int:
    from . import qn

    if args.table:
        if args.check_paper:
            rows = qn.reproduce_table()
            bad = [(N, lo, up) for (N, lo, up) in rows
                   if (lo, up) != qn.REFERENCE_TABLE[N]]
            if bad:
                for N, lo, up in bad:
                    print(f"mismatch at N={N}: got ({lo}, {up}), "
                          f"expected {qn.REFERENCE_TABLE[N]}", file=sys.stderr)
                return EXIT_CHECK_FAILED
        if args.format == "csv":
            _write_out(qn.table_csv(), args.out)
        else:
            _write_out(qn.table_text(), args.out)
        return EXIT_OK
    if args.N is None:
        print("error: provide --N or --table", file=sys.stderr)
        return EXIT_USAGE
    cert = qn.qn_exact(args.N, args.precision)
    if args.format == "json":
        _write_out(cert.to_json() + "\n", args.out)
    else:
        from mpmath import mp

        lines = [
            f"N = {cert.N}",
            f"q_N = {mp.nstr(cert.q, cert.precision)}",
            f"lower bound = {qn.shortest_fixed(cert.lower)}",
            f"upper bound = {qn.shortest_fixed(cert.upper)}",
            f"zeta(2,N) = {mp.nstr(cert.zeta2.value, cert.precision)}",
            f"zeta(3,N) = {mp.nstr(cert.zeta3.value, cert.precision)}",
        ]
        _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_mc(args) -> int:
    from . import transfer
    from .qn import qn_exact

    res = transfer.monte_carlo_cdf(args.N, args.n, args.samples, args.seed)
    envelope = args.ks_multiplier / args.samples ** 0.5 \
        + float(qn_exact(args.N).q) ** args.n
    summary = (f"N={res.N} n={res.iterations} samples={res.samples} "
               f"seed={res.seed} generator={res.generator}\n"
               f"KS distance to rho_cdf = {res.ks_to_rho!r} "
               f"(envelope {envelope!r})\n")
    sys.stdout.write(summary)
    if args.out:
        _write_out(res.to_csv(), args.out)
    return EXIT_OK if res.ks_to_rho <= envelope else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="renyicf",
                                 description="Renyi-type continued fraction toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_N(p):
        p.add_argument("--N", type=int, required=True, help="map parameter, >= 2")

    p = sub.add_parser("expand", help="digit expansion and convergents")
    add_N(p)
    p.add_argument("--x", required=True,
                   help="point in [0,1): decimal (float path) or j/k (exact path)")
    p.add_argument("--n", type=int, default=10, help="number of digits")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("gk", help="Gauss-Kuzmin distribution iteration")
    add_N(p)
    p.add_argument("--grid", type=int, default=4096, help="grid resolution M")
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("--initial", default="uniform",
                   help="'uniform' or a CSV file of x,F rows")
    p.add_argument("--rate-tolerance", type=float, default=0.05)
    p.add_argument("--out", default=None, help="JSON report path")
    p.set_defaults(func=cmd_gk)

    p = sub.add_parser("qn", help="contraction constant certificate / table")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--table", action="store_true")
    p.add_argument("--check-paper", action="store_true",
                   help="verify the table against the embedded reference strings")
    p.add_argument("--precision", type=int, default=30)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_qn)

    p = sub.add_parser("mc", help="Monte-Carlo check of the limit distribution")
    add_N(p)
    p.add_argument("--n", type=int, default=20, help="map iterations per sample")
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ks-multiplier", type=float, default=3.0)
    p.add_argument("--out", default=None, help="empirical CDF CSV path")
    p.set_defaults(func=cmd_mc)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
