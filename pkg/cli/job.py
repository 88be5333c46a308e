"""
YAML job documents: charts, overlaps, optional triple overlap, and the command
to run. Polynomial parse errors are reported at their position in the YAML
file.

Example:

    p: 3
    command: lift
    charts:
      - name: U0
        variables: [x]
      - name: U1
        variables: [y]
    overlaps:
      - charts: [0, 1]
        invert: [x, y]
        inverse_names: [x_inv, y_inv]
        to_first: {y: x_inv, y_inv: x}
        to_second: {x: y_inv, x_inv: y}
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from algebra.fp_algebra import FPAlgebra, localize
from algebra.polynomial import PolyRing
from cech.scheme import GluedScheme, GluingData, TripleData
from coefficients.finite_field import check_prime
from coefficients.witt import WittRing
from utils.errors import InputError, ParseError, StructuralError

logger = logging.getLogger("TotalP.Job")

COMMANDS = ("omega", "lift", "kappa", "di", "compare", "gm", "axioms")


@dataclass
class JobSpec:
    """A parsed job document."""
    p: int
    m: int = 1
    modulus: tuple = None
    order: str = None
    name: str = "job"
    command: str = None
    charts: list = field(default_factory=list)
    overlaps: list = field(default_factory=list)
    triples: list = field(default_factory=list)
    form: list = None
    options: dict = field(default_factory=dict)
    source: str = None
    marks: dict = field(default_factory=dict)

    def location(self, path):
        """(line, column) of the YAML value at path, 1-based."""
        mark = self.marks.get(tuple(path))
        if mark is None:
            return None, None
        return mark.line + 1, mark.column + 1


def _collect_marks(node, path, marks):
    marks[tuple(path)] = node.start_mark
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            _collect_marks(value_node, path + [key_node.value], marks)
    elif isinstance(node, yaml.SequenceNode):
        for index, child in enumerate(node.value):
            _collect_marks(child, path + [index], marks)


def parse_job(text, source=None):
    """
    Parse a job document.

    Raises:
        ParseError: invalid YAML (with line and column) or missing fields
    """
    try:
        node = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        raise ParseError(f"Invalid job document: {e.problem}", line=mark.line + 1 if mark else None,
                         column=mark.column + 1 if mark else None, source=source)
    if not isinstance(data, dict):
        raise ParseError("A job document must be a mapping", line=1, column=1, source=source)
    marks = {}
    if node is not None:
        _collect_marks(node, [], marks)

    def require(key):
        if key not in data:
            raise ParseError(f"Missing required field {key!r}", line=1, column=1, source=source)
        return data[key]

    p = require("p")
    if not isinstance(p, int):
        line, column = marks[("p",)].line + 1, marks[("p",)].column + 1
        raise ParseError(f"p must be an integer, got {p!r}", line=line, column=column, source=source)
    charts = require("charts")
    if not isinstance(charts, list) or not charts:
        raise ParseError("charts must be a non-empty list", line=1, column=1, source=source)
    command = data.get("command")
    if command is not None and command not in COMMANDS:
        mark = marks[("command",)]
        raise ParseError(f"Unknown command {command!r}; use one of {', '.join(COMMANDS)}",
                         line=mark.line + 1, column=mark.column + 1, source=source)
    modulus = data.get("modulus")
    return JobSpec(
        p=p,
        m=data.get("m", 1),
        modulus=tuple(modulus) if modulus else None,
        order=data.get("order"),
        name=data.get("name", Path(source).stem if source else "job"),
        command=command,
        charts=charts,
        overlaps=data.get("overlaps") or [],
        triples=data.get("triples") or [],
        form=data.get("form"),
        options=data.get("options") or {},
        source=source,
        marks=marks,
    )


def load_job(path):
    """Read and parse a job file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read job file {path}: {e}")
    job = parse_job(text, source=str(path))
    logger.info(f"Loaded job {job.name!r} from {path} (p = {job.p}, {len(job.charts)} chart(s))")
    return job


def _parse_at(job, path, thunk):
    """Run a parsing step, relocating polynomial ParseErrors to the YAML position at path."""
    try:
        return thunk()
    except ParseError as e:
        line, column = job.location(path)
        if line is None:
            raise
        offset = (e.column - 1) if e.column else 0
        raise ParseError(f"{path[-1] if path else 'value'}: {e.detail}", line=line, column=column + offset,
                         source=job.source)


def build_chart(job, index, witt, order="grevlex"):
    spec = job.charts[index]
    base_path = ["charts", index]
    variables = spec.get("variables") or []
    name = spec.get("name", f"U{index}")
    ring = _parse_at(job, base_path + ["variables"], lambda: PolyRing(witt, variables, order))
    relations = []
    for r_index, text in enumerate(spec.get("relations") or []):
        path = base_path + ["relations", r_index]
        relations.append(_parse_at(job, path, lambda text=text: ring.parse(str(text))))
    chart = FPAlgebra(ring, relations, name=name)
    invert = spec.get("invert")
    if invert:
        inverse_name = spec.get("inverse_name")
        chart, _ = _parse_at(job, base_path + ["invert"],
                             lambda: localize(chart, str(invert), name=name, inverse_name=inverse_name))
    return chart


def _mapping(job, path, value):
    if not isinstance(value, dict):
        line, column = job.location(path)
        raise ParseError(f"{path[-1]} must be a mapping of variable to polynomial", line=line, column=column,
                         source=job.source)
    return {str(k): str(v) for k, v in value.items()}


def build_scheme(job, default_order="grevlex"):
    """
    Build the GluedScheme described by a job (not yet checked).

    Args:
        job: JobSpec
        default_order: Monomial order for jobs that do not name one

    Raises:
        ParseError: malformed polynomials or fields, located in the YAML
        StructuralError: inconsistent variables or indices
    """
    check_prime(job.p)
    witt = WittRing.of(job.p, job.m, job.modulus)
    order = job.order or default_order
    charts = [build_chart(job, i, witt, order) for i in range(len(job.charts))]
    gluings = []
    for index, spec in enumerate(job.overlaps):
        path = ["overlaps", index]
        pair = tuple(spec.get("charts") or ())
        invert = spec.get("invert") or ()
        if len(pair) != 2 or len(invert) != 2:
            line, column = job.location(path)
            raise ParseError("An overlap needs two chart indices and two elements to invert", line=line,
                             column=column, source=job.source)
        names = tuple(spec.get("inverse_names") or (None, None))
        gluings.append(GluingData(pair, str(invert[0]), str(invert[1]),
                                  _mapping(job, path + ["to_first"], spec.get("to_first")),
                                  _mapping(job, path + ["to_second"], spec.get("to_second")), names))
    scheme = _parse_at(job, ["overlaps"], lambda: GluedScheme.from_gluing_data(charts, gluings, name=job.name))
    for index, spec in enumerate(job.triples):
        path = ["triples", index]
        base = tuple(spec.get("base") or ())
        if base not in scheme.overlaps:
            raise StructuralError(f"Triple {index}: base {base} is not an overlap")
        ring, _ = localize(scheme.overlap(*base).ring_a, str(spec["invert"]), name=spec.get("name", "U012"),
                           inverse_name=spec.get("inverse_name"))
        restrictions = {}
        for key, images in (spec.get("restrictions") or {}).items():
            pair = tuple(int(i) for i in str(key).split("-"))
            restrictions[pair] = _mapping(job, path + ["restrictions", key], images)
        scheme.add_triple(TripleData(tuple(spec.get("charts")), ring, restrictions))
    return scheme
