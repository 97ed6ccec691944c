"""
Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 degenerate geometry. The
JSON report goes to stdout; logs and the rich summary go to stderr.
"""

import argparse
import json
import sys
from typing import Sequence

from hydra.errors import HydraException
from omegaconf.errors import OmegaConfBaseException

from specsetlab.cli.commands import cmd_bounds, cmd_kernels, cmd_tessellate, cmd_verify
from specsetlab.types import RunReport
from specsetlab.utils import get_logger, set_loglevel
from specsetlab.utils.exceptions import DegenerateGeometryError, SpecSetException
from specsetlab.utils.load_config import load_config
from specsetlab.utils.rich_cli import print_report

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _viewport(value: str) -> tuple[float, float, float, float]:
    try:
        x0, y0, x1, y1 = (float(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x0,y0,x1,y1, got {value!r}")
    if not (x0 < x1 and y0 < y1):
        raise argparse.ArgumentTypeError(f"empty viewport {value!r}")
    return x0, y0, x1, y1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specsetlab",
        description="Numerical checks for intersections of generalized disks as K-spectral sets.",
    )
    parser.add_argument("--config", default=None, help="config YAML (defaults to data/config)")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="config override, e.g. quadrature.tolerance=1e-10",
    )
    parser.add_argument("--loglevel", default=None, help="debug, info, warning or error")
    parser.add_argument("--quiet", action="store_true", help="no summary table on stderr")
    parser.add_argument("--workers", type=int, default=None, help="campaign worker threads")
    commands = parser.add_subparsers(dest="command", required=True)

    bounds = commands.add_parser("bounds", help="annulus bound curves as CSV")
    bounds.add_argument("--rmin", type=float, default=None)
    bounds.add_argument("--rmax", type=float, default=None)
    bounds.add_argument("--steps", type=int, default=None)
    bounds.add_argument("--out", required=True, help="CSV file")

    for name, text in (
        ("verify", "decomposition and spectral bound checks"),
        ("kernels", "Poisson kernel positivity and mass"),
    ):
        command = commands.add_parser(name, help=text)
        source = command.add_mutually_exclusive_group(required=True)
        source.add_argument("--instance", help="instance JSON file")
        source.add_argument("--random", metavar="KIND", help="annulus, sector, strip, lens, n_disks<k>")
        command.add_argument("--seed", type=int, default=0)
        command.add_argument("--count", type=int, default=1)
        if name == "verify":
            command.add_argument("--block-size", type=int, default=None)
        else:
            command.add_argument("--samples", type=int, default=None)

    tessellate = commands.add_parser("tessellate", help="cells and median arcs as SVG/JSON")
    tessellate.add_argument("--disks", required=True, help="JSON list of disks or instance file")
    tessellate.add_argument("--svg", default=None)
    tessellate.add_argument("--json", dest="json_out", default=None)
    tessellate.add_argument("--viewport", type=_viewport, default=None, help="x0,y0,x1,y1")
    return parser


def run(args: argparse.Namespace) -> RunReport:
    overrides = list(args.overrides)
    if args.loglevel is not None:
        overrides.append(f"default_loglevel={args.loglevel}")
    if args.workers is not None:
        overrides.append(f"campaign.workers={args.workers}")
    config = load_config(args.config, overrides=overrides) if args.config else load_config(
        overrides=overrides
    )
    loglevel = args.loglevel or config.default_loglevel
    match args.command:
        case "bounds":
            return cmd_bounds(config, loglevel, args.out, args.rmin, args.rmax, args.steps)
        case "verify":
            return cmd_verify(
                config, loglevel, args.instance, args.random, args.seed, args.count, args.block_size
            )
        case "kernels":
            return cmd_kernels(
                config, loglevel, args.instance, args.random, args.seed, args.count, args.samples
            )
        case "tessellate":
            return cmd_tessellate(
                config, loglevel, args.disks, args.svg, args.json_out, args.viewport
            )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    if args.loglevel is not None:
        try:
            set_loglevel(args.loglevel)
        except ValueError as error:
            parser.error(str(error))
    logger = get_logger(__name__, args.loglevel or "warning")
    try:
        report = run(args)
    except DegenerateGeometryError as error:
        logger.debug(f"degenerate geometry: {error}")
        print(f"degenerate geometry: {error}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (SpecSetException, HydraException, OmegaConfBaseException) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    json.dump(report.asdict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    if not args.quiet:
        print_report(report)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILED
