"""Command-line front end.

Subcommands run the verification suites over the cartesian product of the
requested places and residue cardinalities and stream one report per
combination to stdout (JSON lines by default); `table` tabulates the per-sample
quantities of the identity check as CSV.  Exit status: 0 all checks passed,
1 verification failure (reports still emitted), 2 usage error.

Output is deterministic for a fixed command line: per-sample randomness is
derived from (seed, sample index), floats are rendered at a fixed precision
with sorted keys, and the worker pool (--threads) only maps pure per-sample
closures, reduced in index order by the single writer.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .identity import (SamplerExhausted, VerificationReport, lratio, rel_err,
                       sample_pair, verify_basecase, verify_localcalc,
                       verify_recursion, verify_weyl_constancy, _rng_for)
from .numfield import FieldData, PlaceKind, inert_place, split_place
from .paramcalc import verify_appendix
from .weylsum import MAX_WEYL_RANK, SizeError, case_ranks
from .zetarec import zeta_closed

USAGE_ERROR = 2
JSON_DIGITS = 17
TABLE_DIGITS = 15


class UsageError(Exception):
    pass


COMMANDS = ("identity", "weyl", "recursion", "basecase", "appendix", "table")

# weyl/appendix run at inert places only, basecase at split places only; the
# default --place both narrows silently, an explicit wrong place is an error.
PLACE_RESTRICTION = {"weyl": PlaceKind.INERT, "appendix": PlaceKind.INERT,
                     "basecase": PlaceKind.SPLIT}

DEFAULT_TOL = {
    "identity": 1e-7,
    "weyl": 1e-6,
    "recursion": 1e-9,
    "basecase": 1e-8,
    "appendix": 1e-9,
    "table": 1e-7,
}


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: everything a run needs, reproducible from the
    command line alone (no config files or environment variables)."""

    command: str
    n: int
    place: str                  # inert | split | both
    q: tuple[int, ...]
    samples: int
    seed: int
    tol: float
    format: str                 # json | csv | text
    threads: int | None = None
    terms: int = 200
    force_large: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.tol <= 0:
            raise UsageError("--tol must be positive")
        if not self.q:
            raise UsageError("need at least one --q")
        for q in self.q:
            if q < 2:
                raise UsageError(f"--q must be >= 2, got {q}")
        if self.n < 0:
            raise UsageError("--n must be nonnegative")
        if self.command in ("identity", "table") and not self.force_large:
            if not 1 <= self.n <= 3:
                raise UsageError(f"--n {self.n} outside the guarded range 1..3 "
                                 "(use --force-large to override)")
        if self.command in ("identity", "weyl", "recursion", "table"):
            big_rank, small_rank = case_ranks(self.n + 1)
            if max(big_rank, small_rank, (self.n + 2) // 2) > MAX_WEYL_RANK:
                raise UsageError(f"--n {self.n} exceeds the Weyl enumeration guard")

    def places(self) -> list[PlaceKind]:
        requested = {"inert": [PlaceKind.INERT], "split": [PlaceKind.SPLIT],
                     "both": [PlaceKind.INERT, PlaceKind.SPLIT]}[self.place]
        forced = PLACE_RESTRICTION.get(self.command)
        if forced is None:
            return requested
        if forced not in requested:
            raise UsageError(f"the {self.command} check runs at {forced.value} places")
        return [forced]

    def fields(self) -> list[FieldData]:
        return [inert_place(q) if kind is PlaceKind.INERT else split_place(q)
                for kind in self.places() for q in self.q]


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", 0),
        place=args.place,
        q=tuple(args.q) if args.q else (2,),
        samples=args.samples,
        seed=args.seed,
        tol=args.tol if args.tol is not None else DEFAULT_TOL[args.command],
        format=args.format,
        threads=args.threads,
        terms=getattr(args, "terms", 200),
        force_large=getattr(args, "force_large", False),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Numerical verification of unramified local period identities "
                    "for U(n+1) x U(n+2) pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_n: bool = True):
        if with_n:
            p.add_argument("--n", type=int, default=1,
                           help="pair index: the groups are U(n+1) and U(n+2)")
        p.add_argument("--place", choices=["inert", "split", "both"], default="both")
        p.add_argument("--q", type=int, action="append", default=None,
                       help="residue cardinality; repeatable (default: 2)")
        p.add_argument("--samples", type=int, default=50)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads for per-sample evaluation "
                            "(default: available parallelism)")

    p = sub.add_parser("identity", help="end-to-end period identity zeta*S(1) vs Delta*L(1/2)")
    common(p)
    p.add_argument("--force-large", action="store_true",
                   help="allow n outside the guarded range 1..3")
    p = sub.add_parser("weyl", help="double Weyl average constancy and motive value (inert)")
    common(p)
    p = sub.add_parser("recursion", help="inductive zeta route against the closed forms")
    common(p)
    p = sub.add_parser("basecase", help="split base case: series oracle vs closed form")
    common(p, with_n=False)
    p.add_argument("--terms", type=int, default=200)
    p = sub.add_parser("appendix", help="theta-lift L-factor identities (inert)")
    common(p, with_n=False)
    p = sub.add_parser("table", help="per-sample value table for the identity check (CSV)")
    common(p)
    return parser


# ---------------------------------------------------------------------------
# deterministic rendering


def format_float(x: float, digits: int) -> str:
    return format(float(x), f".{digits}g")


def format_complex(z: complex, digits: int) -> str:
    z = complex(z)
    re = format_float(z.real, digits)
    im = format_float(abs(z.imag), digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{re}{sign}{im}i"


def render_json(obj, digits: int = JSON_DIGITS) -> str:
    if isinstance(obj, dict):
        items = (f'"{k}":{render_json(obj[k], digits)}' for k in sorted(obj))
        return "{" + ",".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(render_json(v, digits) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj, digits)
    if isinstance(obj, complex):
        return f'"{format_complex(obj, digits)}"'
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot render {type(obj)!r}")


def emit_report(report: VerificationReport, fmt: str, out) -> None:
    d = report.to_json_dict()
    if fmt == "json":
        out.write(render_json(d) + "\n")
    elif fmt == "csv":
        diffs = ";".join(
            f"{f['factor']}={format_complex(f['lhs'], TABLE_DIGITS)}|"
            f"{format_complex(f['rhs'], TABLE_DIGITS)}" for f in d["factor_diffs"])
        row = [d["check"], str(d["n"]), d["place"], str(d["q"]), str(d["samples"]),
               str(d["seed"]), format_float(d["tol"], TABLE_DIGITS),
               format_float(d["max_rel_err"], TABLE_DIGITS),
               "true" if d["pass"] else "false", diffs]
        out.write(",".join(_csv_quote(c) for c in row) + "\n")
    else:
        status = "PASS" if d["pass"] else "FAIL"
        out.write(f"{status} {d['check']} n={d['n']} place={d['place']} q={d['q']} "
                  f"samples={d['samples']} seed={d['seed']} "
                  f"max_rel_err={format_float(d['max_rel_err'], 6)} "
                  f"tol={format_float(d['tol'], 6)}\n")
        for f in d["factor_diffs"]:
            out.write(f"  factor {f['factor']}: lhs={format_complex(f['lhs'], 6)} "
                      f"rhs={format_complex(f['rhs'], 6)}\n")


REPORT_CSV_HEADER = "check,n,place,q,samples,seed,tol,max_rel_err,pass,factor_diffs"


def _csv_quote(cell: str) -> str:
    if any(ch in cell for ch in ",\"\n"):
        return '"' + cell.replace('"', '""') + '"'
    return cell


# ---------------------------------------------------------------------------
# command execution


def _pool_map(threads: int | None):
    count = threads if threads is not None else (os.cpu_count() or 1)
    if count <= 1:
        return map, None
    executor = ThreadPoolExecutor(max_workers=count)
    return executor.map, executor


def run(config: RunConfig) -> int:
    """Execute the matching verification over the (place, q) product, stream
    one report per combination, and return the exit status."""
    pool_map, executor = _pool_map(config.threads)
    reports: list[VerificationReport] = []
    try:
        for field in config.fields():
            if config.command == "identity":
                reports.append(verify_localcalc(
                    config.n, field, samples=config.samples, seed=config.seed,
                    tol=config.tol, pool_map=pool_map, allow_large=config.force_large))
            elif config.command == "weyl":
                reports.append(verify_weyl_constancy(
                    config.n + 1, field, samples=config.samples, seed=config.seed,
                    tol=config.tol, pool_map=pool_map))
            elif config.command == "recursion":
                reports.append(verify_recursion(
                    config.n, field, samples=config.samples, seed=config.seed,
                    tol=config.tol, pool_map=pool_map))
            elif config.command == "basecase":
                reports.append(verify_basecase(
                    field, samples=config.samples, seed=config.seed, tol=config.tol,
                    terms=config.terms, pool_map=pool_map))
            elif config.command == "appendix":
                reports.append(verify_appendix(
                    field, samples=config.samples, seed=config.seed, tol=config.tol,
                    pool_map=pool_map))
    finally:
        if executor is not None:
            executor.shutdown()
    out = sys.stdout
    if config.format == "csv":
        out.write(REPORT_CSV_HEADER + "\n")
    for report in reports:
        emit_report(report, config.format, out)
    return 0 if all(r.passed for r in reports) else 1


TABLE_COLUMNS = ["sample_index", "zeta", "s_value", "delta", "lratio_half",
                 "lhs", "rhs", "rel_err"]


def emit_table(config: RunConfig) -> int:
    """Tabulate the per-sample constituents of the identity check as CSV."""
    from .numfield import motive_delta
    from .weylsum import s_value_inert, s_value_split

    out = sys.stdout
    worst = 0.0
    out.write(",".join(TABLE_COLUMNS) + "\n")
    for field in config.fields():
        for k in range(config.samples):
            rng = _rng_for(config.seed, k)
            small, big = sample_pair(config.n, field, rng)
            z = zeta_closed(small, big)
            if field.is_inert:
                z_inv = zeta_closed(small.inverted(), big.inverted())
                s_val = s_value_inert(big.chars, small.chars, config.n, field, z_inv)
            else:
                s_val = s_value_split(big.inverted().chars, small.inverted().chars,
                                      config.n, field)
            delta = motive_delta(big.m, field)
            lr = lratio(0.5, small, big)
            lhs = z * s_val
            rhs = delta * lr
            err = rel_err(lhs, rhs)
            worst = max(worst, err)
            cells = [str(k)] + [format_complex(v, TABLE_DIGITS)
                                for v in (z, s_val, delta, lr, lhs, rhs)]
            cells.append(format_float(err, TABLE_DIGITS))
            out.write(",".join(cells) + "\n")
    return 0 if worst <= config.tol else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        config = config_from_args(args)
        if config.command == "table":
            return emit_table(config)
        return run(config)
    except (UsageError, SizeError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except SamplerExhausted as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
