"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 numerical
tolerance failure, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .checks import IDENTITIES, run_oracle_suite
from .exceptions import DegenerateParameterError, DomainError, ResourceCapError, ToleranceError
from .experiments import (
    RECORD_COLUMNS,
    SweepConfig,
    format_csv,
    format_json,
    records_as_rows,
    run_sweep,
    spectrum_rows,
    write_figures,
)

log = logging.getLogger("cobosqueeze")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_TOLERANCE, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _selector(text: str):
    text = text.strip().lower()
    if text in ("last", "first", "vacuum"):
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, 'last' or 'vacuum', got {text!r}") from None


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def _add_grid(p: argparse.ArgumentParser):
    p.add_argument("--ns", type=int, nargs="+", required=True, help="pair-state count(s)")
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, default=None, help="defaults to --r-min")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--state-index", type=_selector, default="last", metavar="{k,last,vacuum}")
    p.add_argument("--jobs", type=int, default=None, help="worker threads (default: CPU count)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobosqueeze",
        description="Squeezed states of Frenkel-like composite bosons.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="all eigenvalues of the transformed operator")
    p.add_argument("--ns", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    _add_output(p)

    p = sub.add_parser("sweep", help="observables of one selected state over an (n_s, r) grid")
    _add_grid(p)
    _add_output(p)

    p = sub.add_parser("variances", help="observables at a single (n_s, r) point")
    p.add_argument("--ns", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--state-index", type=_selector, default="last", metavar="{k,last,vacuum}")
    _add_output(p)

    p = sub.add_parser("figures", help="write fig1.csv, fig2.csv, fig3.csv")
    _add_grid(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("oracle-check", help="compare coboson matrices with the fermionic oracle")
    p.add_argument("--ns-max", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=3)
    return parser


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _render(rows, columns, fmt: str) -> str:
    return format_json(rows, columns) if fmt == "json" else format_csv(rows, columns)


def _grid_config(args) -> SweepConfig:
    r_max = args.r_min if args.r_max is None else args.r_max
    return SweepConfig(tuple(args.ns), args.r_min, r_max, args.steps, args.phi, args.state_index,
                       getattr(args, "format", "csv"), args.out)


def _cmd_spectrum(args) -> int:
    if args.r == 0:
        raise DegenerateParameterError("r = 0 is degenerate: the operator is nilpotent")
    rows = spectrum_rows(args.ns, args.r, args.phi)
    _emit(_render(rows, ("index", "alpha_re", "alpha_im", "abs_alpha"), args.format), args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _grid_config(args)
    records = run_sweep(config, jobs=args.jobs)
    _emit(_render(records_as_rows(records), RECORD_COLUMNS, config.fmt), config.out)
    return EXIT_OK


def _cmd_variances(args) -> int:
    config = SweepConfig((args.ns,), args.r, args.r, 1, args.phi, args.state_index, args.format, args.out)
    records = run_sweep(config, jobs=1)
    _emit(_render(records_as_rows(records), RECORD_COLUMNS, config.fmt), config.out)
    return EXIT_OK


def _cmd_figures(args) -> int:
    config = _grid_config(args)
    paths = write_figures(args.out, config.n_s, config.r_grid(), config.phi, config.state_selector, args.jobs)
    for p in paths:
        log.info("wrote %s", p)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    if args.ns_max < 1:
        raise DomainError("--ns-max must be >= 1")
    report = run_oracle_suite(args.ns_max, seed=args.seed, draws=args.draws)
    print(f"oracle-check n_s=1..{report.n_s_max} seed={report.seed} draws={report.draws} tol={args.tol:g}")
    for name in IDENTITIES:
        dev = report.deviations[name]
        status = "PASS" if dev <= args.tol else "FAIL"
        print(f"{status} {name:<11} max_deviation={dev:.3e}")
    ok = report.passed(args.tol)
    print("all identities pass" if ok else "oracle-check FAILED")
    return EXIT_OK if ok else EXIT_TOLERANCE


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
    "variances": _cmd_variances,
    "figures": _cmd_figures,
    "oracle-check": _cmd_oracle_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (DomainError, DegenerateParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ToleranceError as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
