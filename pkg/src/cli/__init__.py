"""
Command-line surface: input resolution, dispatch and reports.
"""

from .inputs import InputResolver, parse_input
from .report import Report, OK, FAIL, ERROR, EXIT_CODES
from .commands import DISPATCH, Outcome
from .main import ModuliDeskCLI, build_parser, main

__all__ = [
    'InputResolver', 'parse_input', 'Report', 'OK', 'FAIL', 'ERROR', 'EXIT_CODES', 'DISPATCH',
    'Outcome', 'ModuliDeskCLI', 'build_parser', 'main'
]
