"""
Configuration package for Moduli Desk.
"""

from .settings import Config, TOML_CONFIG_TEMPLATE, THREADS_ENV

__all__ = ['Config', 'TOML_CONFIG_TEMPLATE', 'THREADS_ENV']
