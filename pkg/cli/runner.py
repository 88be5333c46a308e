"""
Job dispatch: builds the scheme described by a JobSpec, runs one command and
collects a Report.
"""
import logging

import pandas as pd

from cech.classes import (chart_splittings, classes_equal_up_to_sign, cup_with, deligne_illusie, gauss_manin,
                          global_frobenius_lift, is_coboundary, kodaira_spencer)
from cli.axioms import results_table, run_suites
from cli.job import COMMANDS, build_scheme
from cli.report import Report, class_records, comparison_record, error_report
from differentials.coordinates import coordinate_system
from differentials.splitting import find_splitting, splitting_to_frobenius
from differentials.total import omega_tot
from utils.errors import ChartCoordinateError, InputError, ObstructionError, TotalPError

logger = logging.getLogger("TotalP.Runner")


class JobContext:
    """A job together with the resolved settings it runs under."""

    def __init__(self, job, settings):
        self.job = job
        self.settings = settings
        self._scheme = None

    @property
    def scheme(self):
        if self._scheme is None:
            self._scheme = build_scheme(self.job, self.settings.monomial_order)
        return self._scheme

    def option(self, name, default=None):
        return self.job.options.get(name, default)

    @property
    def degree_bound(self):
        return self.settings.degree_bound if self.settings.degree_bound is not None else self.option("degree_bound")

    @property
    def window(self):
        return self.settings.window if self.settings.window is not None else self.option("window")

    def splittings(self):
        return chart_splittings(self.scheme, self.degree_bound, self.settings.splitting_doublings)

    def coboundary(self, cocycle):
        return is_coboundary(cocycle, self.window, self.settings.window_doublings, self.settings.stabilization_step)

    def compare(self, k1, k2, sign):
        return classes_equal_up_to_sign(k1, k2, self.window, sign, self.settings.window_doublings,
                                        self.settings.stabilization_step)


def run_omega(ctx, report):
    rows = []
    charts = []
    for index, chart in enumerate(ctx.scheme.charts):
        module = omega_tot(chart)
        record = {"chart": chart.name, "generators": list(module.generator_names),
                  "relations": [str(r) for r in module.relations]}
        if module.is_free():
            record["structure"] = f"free, rank {module.rank}"
        else:
            try:
                coords = coordinate_system(chart)
                record["structure"] = f"free, rank {coords.rank + 1}"
                record["free_coordinates"] = ["d^tot p"] + [f"d^tot {z}" for z in coords.free_variables]
            except ChartCoordinateError as e:
                logger.warning(f"Chart {index}: {e}")
                record["structure"] = "presented, no coordinate basis"
        report.add_line(f"{chart.name}: Omega^{{1,tot}} is {record['structure']} "
                        f"({len(module.relations)} relation(s))")
        for r_index, relation in enumerate(module.relations):
            rows.append({"chart": chart.name, "relation": r_index, "vector": str(relation)})
        charts.append(record)
    report.data["charts"] = charts
    report.add_table("relations", pd.DataFrame(rows, columns=["chart", "relation", "vector"]))


def _lift_formulas(lift):
    return {v: str(image) for v, image in lift.images.items()}


def run_lift(ctx, report):
    scheme = ctx.scheme
    if len(scheme.charts) == 1 and not scheme.overlaps:
        chart = scheme.charts[0]
        if ctx.settings.require_smooth and not chart.is_smooth():
            raise InputError(f"{chart.name} fails the Jacobian smoothness criterion")
        splitting = find_splitting(omega_tot(chart), ctx.degree_bound, ctx.settings.splitting_doublings)
        if splitting is None:
            report.status = "absent"
            report.add_line(f"{chart.name}: no Frobenius lift up to the degree bound")
            report.data["lift"] = None
            return
        lift = splitting_to_frobenius(splitting)
        formulas = {"0": _lift_formulas(lift)}
        report.data["lift"] = {"charts": formulas,
                               "splitting": {v: str(splitting.value(v)) for v in chart.variables}}
    else:
        scheme.check()
        result = global_frobenius_lift(scheme, ctx.degree_bound, doublings=ctx.settings.splitting_doublings)
        if result is None:
            report.status = "absent"
            report.add_line(f"{scheme.name}: no global Frobenius lift in the window")
            report.data["lift"] = None
            return
        report.data["lift"] = result.to_dict()
        formulas = report.data["lift"]["charts"]
    rows = [{"chart": i, "variable": v, "image": image}
            for i, images in formulas.items() for v, image in images.items()]
    report.add_line(f"{scheme.name}: Frobenius lift found")
    report.add_table("lift", pd.DataFrame(rows, columns=["chart", "variable", "image"]))


def _class_report(ctx, report, cocycle):
    verdict = ctx.coboundary(cocycle)
    report.data.update({
        "class": cocycle.to_dict(),
        "class_coefficients": class_records(cocycle),
        "coboundary": verdict.equal,
        "witness": verdict.witness.to_dict() if verdict.witness is not None else None,
        "window": verdict.window,
        "stabilized": verdict.stabilized,
        "inconclusive": verdict.inconclusive,
    })
    report.add_line(f"{cocycle.name}: {'a coboundary' if verdict.equal else 'not a coboundary'} "
                    f"in window {verdict.window} (stabilized: {verdict.stabilized})")
    report.add_table(cocycle.name, cocycle.coefficient_table())


def run_kappa(ctx, report):
    kappa = kodaira_spencer(ctx.scheme, ctx.window, ctx.splittings())
    _class_report(ctx, report, kappa)


def run_di(ctx, report):
    lifts = [splitting_to_frobenius(s) for s in ctx.splittings()]
    h = deligne_illusie(ctx.scheme, lifts, ctx.window)
    _class_report(ctx, report, h)


def run_compare(ctx, report):
    splittings = ctx.splittings()
    kappa = kodaira_spencer(ctx.scheme, ctx.window, splittings)
    h = deligne_illusie(ctx.scheme, [splitting_to_frobenius(s) for s in splittings], ctx.window)
    minus = ctx.compare(kappa, h, -1)
    plus = ctx.compare(kappa, h, 1)
    report.data.update({
        "verdict": minus.equal,
        "comparison": comparison_record(minus),
        "plus_comparison": comparison_record(plus),
        "witness": minus.witness.to_dict() if minus.witness is not None else None,
        "window": minus.window,
        "stabilized": minus.stabilized,
        "class_coefficients": class_records(kappa),
    })
    report.add_line(f"kappa = -h modulo coboundaries: {minus.equal} (window {minus.window}, "
                    f"stabilized: {minus.stabilized})")
    report.add_line(f"kappa = +h modulo coboundaries: {plus.equal}")
    report.add_table("kappa", kappa.coefficient_table())
    report.add_table("h", h.coefficient_table())
    if minus.witness is not None:
        report.add_table("witness", minus.witness.coefficient_table())


def run_gm(ctx, report):
    scheme = ctx.scheme
    form = ctx.job.form if ctx.job.form is not None else [None] * len(scheme.charts)
    splittings = ctx.splittings()
    kappa = kodaira_spencer(scheme, ctx.window, splittings)
    cup = cup_with(kappa, form)
    default = gauss_manin(scheme, form, bound=ctx.window)
    sigma = gauss_manin(scheme, form, lifts="sigma", splittings=splittings, bound=ctx.window)
    agree = ctx.compare(default, cup, 1)
    exact = sigma == cup
    report.data.update({
        "gauss_manin": default.to_dict(),
        "cup": cup.to_dict(),
        "class_coefficients": class_records(default),
        "agree_modulo_coboundaries": agree.equal,
        "sigma_lifts_exact": exact,
        "witness": agree.witness.to_dict() if agree.witness is not None else None,
        "window": agree.window,
        "stabilized": agree.stabilized,
    })
    report.add_line(f"GM(omega) = kappa cup omega modulo coboundaries: {agree.equal} (window {agree.window})")
    report.add_line(f"with sigma lifts the cocycles agree exactly: {exact}")
    report.add_table("gauss_manin", default.coefficient_table())
    report.add_table("kappa cup omega", cup.coefficient_table())


def run_axioms(ctx, report):
    results = run_suites(ctx.job.p, ctx.settings.axiom_seed, ctx.settings.axiom_samples)
    report.data["suites"] = [r.to_dict() for r in results]
    report.data["seed"] = ctx.settings.axiom_seed
    if not all(r.passed for r in results):
        report.status = "failed"
    report.add_line(f"{sum(r.passed for r in results)}/{len(results)} suites passed")
    report.add_table("suites", results_table(results))


HANDLERS = {
    "omega": run_omega,
    "lift": run_lift,
    "kappa": run_kappa,
    "di": run_di,
    "compare": run_compare,
    "gm": run_gm,
    "axioms": run_axioms,
}


def run(job, settings, command=None):
    """
    Run one command of a job.

    Args:
        job: JobSpec
        settings: Settings with CLI overrides applied
        command: Overrides job.command

    Returns:
        Report; status "absent" for a missing lift or an obstructed chart,
        "error" for library errors
    """
    command = command or job.command
    if command not in COMMANDS:
        return error_report(command, job.name, InputError(
            f"No valid command given (got {command!r}); use one of {', '.join(COMMANDS)}"))
    ctx = JobContext(job, settings)
    report = Report(command=command, job=job.name)
    logger.info(f"Running {command} on {job.name}")
    try:
        HANDLERS[command](ctx, report)
    except ObstructionError as e:
        report.status = "absent"
        report.add_line(f"obstructed: {e}")
        report.data["obstructed_chart"] = e.chart
    except TotalPError as e:
        logger.error(f"{command} on {job.name} failed: {e}")
        return error_report(command, job.name, e)
    logger.info(f"{command} on {job.name}: {report.status}")
    return report
