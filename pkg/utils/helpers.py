"""
General helper utilities for reports and randomized suites.
"""
import logging
import random

logger = logging.getLogger("TotalP.Helpers")


def truncate_text(text, max_length=100):
    """
    Truncate text to specified length.

    Args:
        text: Text to truncate
        max_length: Maximum length

    Returns:
        Truncated text with ellipsis if needed
    """
    if text is None:
        return ""

    text = str(text)
    if len(text) <= max_length:
        return text

    return text[:max_length - 3] + "..."


def make_rng(seed=None):
    """A private random.Random; seed None draws from system entropy."""
    rng = random.Random(seed)
    logger.debug(f"Random generator seeded with {seed!r}")
    return rng


def format_pair(key):
    """'a-b' for an overlap pair, str(i) for a chart index."""
    if isinstance(key, tuple):
        return "-".join(str(k) for k in key)
    return str(key)
