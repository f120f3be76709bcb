"""
Logging utilities for Moduli Desk.
"""
import logging
import sys

from src.config import Config


def setup_logging():
    """Configure logging for the application."""
    log_level = getattr(logging, str(Config.LOG_LEVEL()).upper(), logging.WARNING)

    # stdout carries reports, so log lines go to stderr
    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = Config.LOG_FILE()
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )

    return logging.getLogger("moduli_desk")


# Global logger instance
logger = setup_logging()
