"""
Utility package for Moduli Desk.
"""

from .logging import logger, setup_logging
from .errors import DeskError, ParseError, ValidationError, ComplexNotClosedError
from .validation import InputValidator
from .run_logger import RunLogger
from .helpers import format_error_message
from .cache import CacheManager, cache_manager
from .parallel import parallel_map

__all__ = [
    'logger', 'setup_logging', 'DeskError', 'ParseError', 'ValidationError',
    'ComplexNotClosedError', 'InputValidator', 'RunLogger', 'format_error_message',
    'CacheManager', 'cache_manager', 'parallel_map'
]
