"""
Command-line entry point: run one command of a YAML job document.

    python main.py --input data/jobs/genus_one.yaml --command compare --json data/output/compare.json

Exit codes: 0 success, 2 no lift / obstructed, 1 input or library error.
"""
import argparse
import sys
from dataclasses import replace
from pathlib import Path

from cli.job import COMMANDS, load_job
from cli.report import error_report
from cli.runner import run
from config.logging_config import setup_logging
from config.settings import load_settings
from utils.errors import TotalPError


def build_parser():
    parser = argparse.ArgumentParser(description="Total p-differentials: Frobenius lifts and Čech classes")
    parser.add_argument("--input", required=True, help="YAML job document")
    parser.add_argument("--command", choices=COMMANDS, help="Command to run (overrides the job's command)")
    parser.add_argument("--degree-bound", type=int, help="Degree bound of the splitting search")
    parser.add_argument("--window", type=int, help="Degree window of the Čech coboundary solver")
    parser.add_argument("--json", help="Write the machine-readable report to this path")
    parser.add_argument("--save", action="store_true",
                        help="Write the machine-readable report to the configured output directory")
    parser.add_argument("--seed", type=int, help="Seed of the randomized property suites")
    parser.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ERROR)")
    parser.add_argument("--config", help="Alternate config.yaml")
    return parser


def apply_overrides(settings, args):
    """CLI flags take precedence over config.yaml and the environment."""
    overrides = {}
    if args.degree_bound is not None:
        overrides["degree_bound"] = args.degree_bound
    if args.window is not None:
        overrides["window"] = args.window
    if args.seed is not None:
        overrides["axiom_seed"] = args.seed
    if args.log_level:
        overrides["log_level"] = args.log_level.upper()
    return replace(settings, **overrides)


def default_report_path(settings, report):
    """<output_dir>/<job>_<command>.json"""
    return Path(settings.output_dir) / f"{report.job}_{report.command}.json"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        settings = apply_overrides(load_settings(args.config), args)
    except TotalPError as e:
        logger = setup_logging(args.log_level or "INFO", None)
        logger.error(f"Cannot load settings: {e}")
        report = error_report(args.command, args.input, e)
        print(report.render_text())
        return report.exit_code

    logger = setup_logging(settings.log_level, settings.log_file, settings.max_file_size_mb,
                           settings.backup_count)
    logger.info("=" * 60)
    logger.info(f"Job {args.input}")
    logger.info("=" * 60)

    try:
        job = load_job(args.input)
        report = run(job, settings, args.command)
    except TotalPError as e:
        logger.error(f"Cannot load job: {e}")
        report = error_report(args.command, args.input, e)

    print(report.render_text())
    if args.json:
        report.write_json(args.json)
    if args.save:
        report.write_json(default_report_path(settings, report))
    logger.info(f"Finished with exit code {report.exit_code}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
