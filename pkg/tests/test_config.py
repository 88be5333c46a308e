"""
Unit tests for the settings loader and logging configuration.
"""
import logging

import pytest

from config.logging_config import LOGGER_NAME, setup_logging
from config.settings import load_settings
from utils.errors import InputError, ParseError


def test_packaged_defaults(mocker):
    """Test the values of the packaged config.yaml."""
    mocker.patch.dict("os.environ", {}, clear=True)
    settings = load_settings()
    assert settings.degree_bound is None
    assert settings.window is None
    assert settings.stabilization_step == 2
    assert settings.require_smooth is False
    assert settings.axiom_seed == 0
    assert settings.log_level == "INFO"


def test_log_level_from_environment(mocker):
    """Test that TOTALP_LOG_LEVEL overrides the YAML level."""
    mocker.patch.dict("os.environ", {"TOTALP_LOG_LEVEL": "debug"})
    assert load_settings().log_level == "DEBUG"


def test_config_path_from_environment(mocker, tmp_path):
    """Test that TOTALP_CONFIG selects an alternate file."""
    config = tmp_path / "config.yaml"
    config.write_text("splitting:\n  degree_bound: 12\ncech:\n  window: 9\naxioms:\n  samples: 5\n")
    mocker.patch.dict("os.environ", {"TOTALP_CONFIG": str(config)})
    settings = load_settings()
    assert settings.degree_bound == 12
    assert settings.window == 9
    assert settings.axiom_samples == 5
    assert settings.raw["cech"] == {"window": 9}


def test_empty_config_uses_defaults(tmp_path):
    """Test that an empty file falls back to the dataclass defaults."""
    config = tmp_path / "empty.yaml"
    config.write_text("")
    settings = load_settings(config)
    assert settings.splitting_doublings == 1
    assert settings.monomial_order == "grevlex"


def test_invalid_config(tmp_path):
    """Test that malformed YAML raises ParseError with a location."""
    config = tmp_path / "bad.yaml"
    config.write_text("cech:\n  window: [1, 2\n")
    with pytest.raises(ParseError) as info:
        load_settings(config)
    assert info.value.line is not None


def test_missing_config_file(tmp_path):
    """Test that an unreadable config file raises InputError."""
    with pytest.raises(InputError, match="Cannot read configuration file"):
        load_settings(tmp_path / "absent.yaml")


@pytest.fixture
def clean_logger():
    logger = logging.getLogger(LOGGER_NAME)
    saved = list(logger.handlers)
    logger.handlers.clear()
    yield logger
    for handler in logger.handlers:
        handler.close()
    logger.handlers[:] = saved


def test_setup_logging_console_only(clean_logger):
    """Test that a console-only setup installs one handler once."""
    logger = setup_logging("WARNING", None)
    assert logger is clean_logger
    assert logger.level == logging.WARNING
    assert len(logger.handlers) == 1
    setup_logging("WARNING", None)
    assert len(logger.handlers) == 1


def test_setup_logging_with_file(clean_logger, tmp_path):
    """Test that a log file handler is created under a new directory."""
    log_file = tmp_path / "logs" / "total_p.log"
    logger = setup_logging("INFO", str(log_file))
    assert len(logger.handlers) == 2
    logger.getChild("Test").info("hello")
    for handler in logger.handlers:
        handler.flush()
    assert "hello" in log_file.read_text()
