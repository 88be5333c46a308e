"""
Centralized logging configuration for the total p-differentials toolkit.
"""
import logging
import logging.handlers
from pathlib import Path

import coloredlogs

LOGGER_NAME = "TotalP"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(log_level="INFO", log_file="logs/total_p.log", max_file_size_mb=10, backup_count=5):
    """
    Configure logging with both file and console handlers.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_file: Path to log file, or None for console only
        max_file_size_mb: Rotation threshold of the file handler
        backup_count: Number of rotated files kept

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(getattr(logging, str(log_level).upper()))

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=max_file_size_mb * 1024 * 1024,
            backupCount=backup_count
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.getLevelName(str(log_level).upper()))
    console_handler.setFormatter(
        coloredlogs.ColoredFormatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    )
    logger.addHandler(console_handler)

    return logger
