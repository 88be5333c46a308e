"""
Job reports: a human-readable rendering with pandas tables and a
deterministic JSON document.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from utils.helpers import truncate_text

logger = logging.getLogger("TotalP.Report")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_ABSENT = 2


@dataclass
class Report:
    """
    Result of one job.

    status is "ok", "absent" (no lift / obstructed) or "error".
    """
    command: str
    job: str
    status: str = "ok"
    summary: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        if self.status == "ok":
            return EXIT_OK
        if self.status == "absent":
            return EXIT_ABSENT
        return EXIT_INPUT_ERROR

    def add_line(self, text):
        self.summary.append(text)

    def add_table(self, name, frame):
        self.tables[name] = frame

    def to_dict(self):
        return {"command": self.command, "job": self.job, "status": self.status,
                "exit_code": self.exit_code, **self.data}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str)

    def render_text(self, max_cell=60):
        lines = [f"== {self.command} :: {self.job} ({self.status}) =="]
        lines.extend(self.summary)
        for name, frame in self.tables.items():
            lines.append("")
            lines.append(f"-- {name} --")
            if frame.empty:
                lines.append("(empty)")
                continue
            cell = lambda v: truncate_text(v, max_cell)
            shown = frame.map(cell) if hasattr(frame, "map") else frame.applymap(cell)
            lines.append(shown.to_string(index=False))
        return "\n".join(lines)

    def write_json(self, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")
        logger.info(f"Wrote machine-readable report to {path}")
        return path


def error_report(command, job, error):
    report = Report(command=command or "unknown", job=job or "unknown", status="error")
    report.add_line(f"error: {error}")
    report.data["error"] = {"type": type(error).__name__, "message": str(error)}
    for attribute in ("line", "column", "chart"):
        value = getattr(error, attribute, None)
        if value is not None:
            report.data["error"][attribute] = value
    failures = getattr(error, "failures", None)
    if failures:
        report.data["error"]["failures"] = list(failures)
    return report


def comparison_record(result):
    """Machine fields of a ComparisonResult."""
    record = result.to_dict()
    record["class_coefficients"] = (class_records(result.difference)
                                    if result.difference is not None else [])
    return record


def class_records(cochain):
    """Sorted coefficient rows of a CechClass for JSON output."""
    frame = cochain.coefficient_table()
    if frame.empty:
        return []
    frame = frame.sort_values(["index", "component", "monomial"], kind="mergesort")
    return frame.to_dict("records")

