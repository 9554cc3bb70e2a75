"""
Command-line front end.

    riley poly    --n N --m M
    riley scan    --n N --m M --r R [--dump-curve FILE]
    riley oracle  --n N --m M [--samples K --seed S]
    riley certify --n N --m M --r R
    riley sweep   --n-range lo:hi --m-range lo:hi --r-range lo:hi [--workers W]

Exit status: 0 on success, 1 on bad input, 2 when a scan cannot bound its
search range.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from ._numeric import precision, two_cos_pi_over
from .certifier import certify, summarize, sweep, verdicts_to_csv, verdicts_to_json
from .rep_oracle import oracle_discrepancy
from .riley_closed import DEFAULT_EXPANSION_LIMIT, ExpansionTooLarge, KnotParams, riley_poly
from .root_finder import ScanConfig, UpperBoundError, riley_hp, scan_roots, y_upper_bound

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INTERNAL = 2

_RANGE_FLAGS = ("--n-range", "--m-range", "--r-range")

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; here 2 is reserved for internal failures
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_range(text):
    """'lo:hi' or 'lo:hi:step', both ends inclusive."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected lo:hi or lo:hi:step, got {text!r}")
    try:
        lo, hi, *rest = (int(v) for v in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range bounds must be integers, got {text!r}") from None
    step = rest[0] if rest else 1
    if step <= 0:
        raise argparse.ArgumentTypeError("range step must be positive")
    return (lo, hi, step)


def _nonzero_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v == 0:
        raise argparse.ArgumentTypeError("must be non-zero (n = 0 or m = 0 is not a knot in this family)")
    return v


@dataclass
class CliConfig:
    subcommand: str
    n: int | None = None
    m: int | None = None
    r: int | None = None
    n_range: tuple | None = None
    m_range: tuple | None = None
    r_range: tuple | None = None
    format: str = "json"
    out: str | None = None
    grid_step: float = 1e-3
    y_max: float = 1e6
    tol: float = 1e-12
    samples: int = 100
    seed: int = 0
    bits: int = 200
    workers: int = 1
    dump_curve: str | None = None
    limit: int = DEFAULT_EXPANSION_LIMIT

    def scan_config(self):
        return ScanConfig(grid_step=self.grid_step, y_max_cap=self.y_max, bisect_tol=self.tol)

    @property
    def params(self):
        return KnotParams(self.n, self.m)


def build_parser():
    parser = _Parser(prog="riley", description="Riley polynomials of C(2n+1, 2m, 2) and root certificates.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, with_r=False):
        p.add_argument("--n", type=_nonzero_int, required=True)
        p.add_argument("--m", type=_nonzero_int, required=True)
        if with_r:
            p.add_argument("--r", type=int, required=True)
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", help="write here instead of standard output")

    def scan_flags(p):
        p.add_argument("--grid-step", type=float, default=1e-3)
        p.add_argument("--y-max", type=float, default=1e6)
        p.add_argument("--tol", type=float, default=1e-12, help="bisection tolerance")

    p = sub.add_parser("poly", help="print the expanded Riley polynomial")
    common(p)
    p.add_argument("--limit", type=int, default=DEFAULT_EXPANSION_LIMIT, help="largest |n|, |m| to expand")

    p = sub.add_parser("scan", help="certified real roots y > 2 at x = 2cos(pi/r)")
    common(p, with_r=True)
    scan_flags(p)
    p.add_argument("--dump-curve", help="CSV file for (y, R(x, y)) samples")

    p = sub.add_parser("oracle", help="compare the closed form with the matrix product")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bits", type=int, default=200, help="working precision")

    p = sub.add_parser("certify", help="verdict for one (n, m, r)")
    common(p, with_r=True)
    scan_flags(p)

    p = sub.add_parser("sweep", help="verdicts over a grid of (n, m, r)")
    for name in _RANGE_FLAGS:
        p.add_argument(name, type=parse_range, required=True, metavar="LO:HI")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    scan_flags(p)
    return parser


def _glue_ranges(argv):
    # "-2:2" looks like an option to argparse, so attach it as "--n-range=-2:2"
    out, it = [], iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def parse_args(argv):
    ns = build_parser().parse_args(_glue_ranges(list(argv)))
    cfg = CliConfig(**{k: v for k, v in vars(ns).items() if v is not None})
    if cfg.r is not None and cfg.r < 2:
        raise UsageError("riley: error: --r must be >= 2")
    if cfg.subcommand == "oracle" and cfg.samples < 1:
        raise UsageError("riley: error: --samples must be positive")
    return cfg


def _expand(rng):
    lo, hi, step = rng
    return range(lo, hi + 1, step)


# ---------------------------------------------------------------------------
# subcommands


def cmd_poly(cfg):
    poly = riley_poly(cfg.params, cfg.limit)
    if cfg.format == "text":
        lines = [f"R for {cfg.params}: y-degree {poly.y_degree}, {len(poly.terms)} terms"]
        lines += [f"{c} q^{i} y^{j}" for i, j, c in poly.to_json_list()]
        return "\n".join(lines) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q_exp", "y_exp", "coefficient"])
        w.writerows(poly.to_json_list())
        return buf.getvalue()
    return poly.to_json() + "\n"


def _dump_curve(cfg, path):
    """(y, R(x0, y)) at 2001 evenly spaced y on [2, Y], for external plotting."""
    p = cfg.params
    y_hi = y_upper_bound(p, 2 * math.cos(math.pi / cfg.r), cfg.scan_config())
    with precision(160), open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["y", "R"])
        x0 = two_cos_pi_over(cfg.r)
        for y in np.linspace(2.0, y_hi, 2001):
            w.writerow([f"{y:.17g}", f"{float(riley_hp(p, x0, float(y))):.17g}"])


def cmd_scan(cfg):
    certs = scan_roots(cfg.params, cfg.r, cfg.scan_config())
    if cfg.dump_curve:
        _dump_curve(cfg, cfg.dump_curve)
    if cfg.format == "text":
        if not certs:
            return f"{cfg.params}, r = {cfg.r}: no root y > 2 found on the scanned range\n"
        lines = [f"{cfg.params}, r = {cfg.r}: {len(certs)} root(s)"]
        for c in certs:
            lines.append(f"  y* = {c.y_star_digits}  |R| = {c.residual:.2e}  relation = {c.relation_residual:.2e}")
        return "\n".join(lines) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "r", "y_star", "lo", "hi", "residual", "relation_residual"])
        for c in certs:
            d = c.to_dict()
            w.writerow([d["n"], d["m"], d["r"], repr(d["y_star"]), *map(repr, d["bracket"]),
                        repr(d["residual"]), repr(d["relation_residual"])])
        return buf.getvalue()
    return json.dumps([c.to_dict() for c in certs], indent=2) + "\n"


def cmd_oracle(cfg):
    worst = oracle_discrepancy(cfg.params, cfg.samples, cfg.seed, cfg.bits)
    result = {"n": cfg.n, "m": cfg.m, "samples": cfg.samples, "seed": cfg.seed,
              "bits": cfg.bits, "max_rel_discrepancy": worst}
    if cfg.format == "text":
        return f"{cfg.params}: max relative discrepancy {worst:.3e} over {cfg.samples} samples\n"
    if cfg.format == "csv":
        return ",".join(result) + "\n" + ",".join(str(v) for v in result.values()) + "\n"
    return json.dumps(result, indent=2) + "\n"


def _verdict_text(verdicts):
    lines = []
    for v in verdicts:
        extra = f" y* = {v.certificate.y_star:.12g}" if v.certificate else ""
        if v.error:
            extra += f" ({v.error})"
        lines.append(f"n={v.n:3d} m={v.m:3d} r={v.r:3d}  {v.status}{extra}")
    return lines


def _format_verdicts(cfg, verdicts):
    if cfg.format == "text":
        lines = _verdict_text(verdicts)
        lines.append(" ".join(f"{k}={v}" for k, v in summarize(verdicts).items()))
        return "\n".join(lines) + "\n"
    if cfg.format == "csv":
        return verdicts_to_csv(verdicts)
    return verdicts_to_json(verdicts) + "\n"


def cmd_certify(cfg):
    verdict = certify(cfg.params, cfg.r, cfg.scan_config())
    if verdict.error:
        raise UpperBoundError(verdict.error)
    return _format_verdicts(cfg, [verdict])


def cmd_sweep(cfg):
    ns = [n for n in _expand(cfg.n_range) if n != 0]
    ms = [m for m in _expand(cfg.m_range) if m != 0]
    rs = list(_expand(cfg.r_range))
    if rs and min(rs) < 2:
        raise UsageError("riley: error: --r-range values must be >= 2")
    verdicts = sweep(ns, ms, rs, cfg.scan_config(), cfg.workers)
    return _format_verdicts(cfg, verdicts)


COMMANDS = {"poly": cmd_poly, "scan": cmd_scan, "oracle": cmd_oracle, "certify": cmd_certify, "sweep": cmd_sweep}


def run(argv=None):
    """Run the CLI and return the exit status."""
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
        text = COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_DOMAIN
    except UpperBoundError as exc:
        print(f"riley: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, ExpansionTooLarge) as exc:
        print(f"riley: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())
