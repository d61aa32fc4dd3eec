##########################################################################
# Wiener-Hopf index toolkit: cone strata, index complexes, cone metrics
# Copyright (C) 2024  Amelia Dobis
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
##########################################################################

from pathlib import Path
from typing import Optional
import argparse
import logging
import sys

from pydantic import ValidationError

from .conemetric import MetricConfig
from .errors import InputError, PropertyViolation, WhIndexError
from .parser import parse_cone
from .passes.allpasses import pipelines, run_pipeline
from .passes.genericpass import AnalysisContext, AnalysisOptions
from .report import AnalysisReport, report_emit

logger = logging.getLogger("whindex")

def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return n

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "markdown"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for pair sweeps")
    common.add_argument("--quiet", action="store_true", help="no progress bars")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")

    cone = argparse.ArgumentParser(add_help=False)
    cone.add_argument("cone", help="cone document (JSON file)")
    cone.add_argument("--metric-samples", type=_positive, help="sphere grid points per angle")
    cone.add_argument("--metric-tol", type=float, default=5e-3)
    cone.add_argument("--lorentz-samples", type=_positive, default=720)

    ap = argparse.ArgumentParser(prog="whindex", description="Wiener-Hopf index toolkit for convex cones")
    sub = ap.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", parents=[common, cone], help="run every analysis on a cone")
    analyze.add_argument("--metric", action="store_true", help="include the metric suite")
    sub.add_parser("stratify", parents=[common, cone], help="face strata and incidence spaces")
    sub.add_parser("smooth", parents=[common, cone], help="local smoothness of the dual cone")
    sub.add_parser("complex", parents=[common, cone], help="augmented cellular complex and homology")
    sub.add_parser("metric", parents=[common, cone], help="truncated Hausdorff metric checks")

    classical = sub.add_parser("classical", parents=[common], help="Toeplitz index against winding number")
    classical.add_argument("--symbol", action="append", default=[], help='Laurent symbol "k:c,k:c,..."')
    classical.add_argument("--sections", type=_positive, help="finite section size")

    siegel = sub.add_parser("siegel", parents=[common], help="Siegel cone checks")
    siegel.add_argument("cone", nargs="?", help="cone document with builtin.siegel")
    siegel.add_argument("--m", type=_positive, action="append", help="Lorentz-as-Siegel dimension (repeatable)")
    siegel.add_argument("--trials", type=_positive, default=1000)
    return ap

def _options(args: argparse.Namespace) -> AnalysisOptions:
    opts = AnalysisOptions(seed=args.seed, jobs=args.jobs, progress=not args.quiet)
    if hasattr(args, "metric_tol"):
        try:
            opts.metric_cfg = MetricConfig(sphere_samples_per_dim=args.metric_samples,
                                           tolerance=args.metric_tol)
        except ValidationError as e:
            raise InputError(e.errors()[0]["msg"], "--metric-tol") from None
        opts.lorentz_samples = args.lorentz_samples
    opts.metric = args.command == "metric" or getattr(args, "metric", False)
    if args.command == "classical":
        opts.symbols, opts.sections = args.symbol, args.sections
    if args.command == "siegel":
        opts.trials = args.trials
        opts.siegel_m = args.m if args.m else ([] if args.cone else [1, 2])
    return opts

def analyze(args: argparse.Namespace) -> AnalysisReport:
    opts = _options(args)
    doc = parse_cone(args.cone) if getattr(args, "cone", None) else None
    ids = pipelines[args.command]
    if args.command == "analyze":
        if doc.kind == "siegel":
            ids = ["siegel"]
            opts.siegel_m = []
        elif not opts.metric:
            ids = [i for i in ids if i != "metric"]
    ctx = AnalysisContext(AnalysisReport(command=args.command, seed=opts.seed), opts, doc)
    return run_pipeline(ids, ctx).report

def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        report = analyze(args)
        text = report_emit(report, args.format)
        if args.report is not None:
            args.report.write_text(text)
        else:
            sys.stdout.write(text)
        failed = report.failed_checks()
        if failed:
            raise PropertyViolation(failed)
    except WhIndexError as e:
        logger.error("%s", e)
        return e.exit_code
    except Exception as e:
        logger.error("internal error: %s", e)
        logger.debug("traceback", exc_info=True)
        return 3
    return 0

if __name__ == "__main__":
    sys.exit(main())
