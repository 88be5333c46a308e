"""
Settings loader: config.yaml merged with environment overrides.
"""
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml
from dotenv import load_dotenv

from utils.errors import InputError, ParseError

load_dotenv()

logger = logging.getLogger("TotalP.Settings")

DEFAULT_CONFIG_PATH = Path(__file__).parent / "config.yaml"


@dataclass(frozen=True)
class Settings:
    """Resolved runtime settings. `None` bounds mean: use the per-job formula."""
    degree_bound: int = None
    splitting_doublings: int = 1
    window: int = None
    window_doublings: int = 1
    stabilization_step: int = 2
    monomial_order: str = "grevlex"
    require_smooth: bool = False
    axiom_seed: int = 0
    axiom_samples: int = 200
    output_dir: str = "data/output"
    log_level: str = "INFO"
    log_file: str = "logs/total_p.log"
    max_file_size_mb: int = 10
    backup_count: int = 5
    raw: dict = field(default_factory=dict)


def load_settings(config_path=None):
    """
    Load settings from YAML, then apply environment overrides.

    Args:
        config_path: Path to a YAML file; defaults to $TOTALP_CONFIG or the
            packaged config.yaml

    Returns:
        Settings instance

    Raises:
        ParseError: malformed YAML
        InputError: the file cannot be read
    """
    path = Path(config_path or os.getenv("TOTALP_CONFIG") or DEFAULT_CONFIG_PATH)
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        raise ParseError(f"Invalid configuration file {path}: {e.problem}",
                         line=mark.line + 1 if mark else None,
                         column=mark.column + 1 if mark else None)
    except OSError as e:
        raise InputError(f"Cannot read configuration file {path}: {e}")

    splitting = raw.get("splitting", {}) or {}
    cech = raw.get("cech", {}) or {}
    algebra = raw.get("algebra", {}) or {}
    axioms = raw.get("axioms", {}) or {}
    reports = raw.get("reports", {}) or {}
    logging_section = raw.get("logging", {}) or {}

    settings = Settings(
        degree_bound=splitting.get("degree_bound"),
        splitting_doublings=splitting.get("doublings", 1),
        window=cech.get("window"),
        window_doublings=cech.get("doublings", 1),
        stabilization_step=cech.get("stabilization_step", 2),
        monomial_order=algebra.get("monomial_order", "grevlex"),
        require_smooth=bool(algebra.get("require_smooth", False)),
        axiom_seed=axioms.get("seed", 0),
        axiom_samples=axioms.get("samples", 200),
        output_dir=reports.get("output_dir", "data/output"),
        log_level=(os.getenv("TOTALP_LOG_LEVEL") or logging_section.get("level", "INFO")).upper(),
        log_file=logging_section.get("log_file", "logs/total_p.log"),
        max_file_size_mb=logging_section.get("max_file_size_mb", 10),
        backup_count=logging_section.get("backup_count", 5),
        raw=raw,
    )

    logger.debug(f"Loaded settings from {path}")
    return settings
