"""Job documents, dispatch, reports and property suites for the command line."""
from cli.axioms import AxiomResult, run_suites
from cli.job import COMMANDS, JobSpec, build_scheme, load_job, parse_job
from cli.report import Report, error_report
from cli.runner import run

__all__ = ["AxiomResult", "COMMANDS", "JobSpec", "Report", "build_scheme", "error_report", "load_job",
           "parse_job", "run", "run_suites"]
