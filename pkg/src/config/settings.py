"""
Configuration module for Moduli Desk.
Reads configuration from the TOML file, with environment overrides.
"""
import os
import toml
from pathlib import Path
from typing import Any, Dict, List, Tuple

from dotenv import load_dotenv

load_dotenv()

THREADS_ENV = "MODULI_DESK_THREADS"
LOG_LEVEL_ENV = "MODULI_DESK_LOG_LEVEL"
CONVENTIONS = ("standard", "printed")
CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "config.toml"


class Config:
    """
    Settings from config/config.toml, one classmethod per key.

    The file is parsed on first use and kept in a class attribute; getters patched
    with pytest-mock therefore need no file at all.
    """

    _config_data = None
    _config_file_path = None

    @classmethod
    def _load_config(cls):
        if cls._config_data is not None:
            return
        if not CONFIG_PATH.is_file():
            raise FileNotFoundError(f"no configuration at {CONFIG_PATH}; copy TOML_CONFIG_TEMPLATE there")
        try:
            cls._config_data = toml.load(CONFIG_PATH)
        except (toml.TomlDecodeError, OSError) as e:
            raise ValueError(f"cannot read {CONFIG_PATH}: {e}")
        cls._config_file_path = CONFIG_PATH

    @classmethod
    def _get_nested_value(cls, keys: str, default: Any = None) -> Any:
        """Dotted lookup, e.g. ``computation.threads``; missing sections give ``default``."""
        cls._load_config()
        node = cls._config_data
        for part in keys.split('.'):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    @classmethod
    def _int(cls, keys: str, default: int) -> int:
        return int(cls._get_nested_value(keys, default))

    # Application Configuration
    @classmethod
    def APP_NAME(cls) -> str:
        return cls._get_nested_value('application.name', 'moduli-desk')

    @classmethod
    def LOG_LEVEL(cls) -> str:
        return os.environ.get(LOG_LEVEL_ENV) or cls._get_nested_value('application.log_level', 'WARNING')

    @classmethod
    def OUTPUT_FORMAT(cls) -> str:
        return cls._get_nested_value('application.output_format', 'text')

    # Computation Configuration
    @classmethod
    def THREADS(cls) -> int:
        override = os.environ.get(THREADS_ENV)
        if override:
            try:
                return max(1, int(override))
            except ValueError:
                pass
        return cls._int('computation.threads', 1)

    @classmethod
    def DEFAULT_SEED(cls) -> int:
        return cls._int('computation.default_seed', 20240601)

    @classmethod
    def BATTERY_SIZE(cls) -> int:
        return cls._int('computation.battery_size', 100)

    @classmethod
    def ENUMERATION_BUDGET(cls) -> int:
        return cls._int('computation.enumeration_budget', 1_000_000)

    @classmethod
    def MAX_POLY_DEGREE(cls) -> int:
        return cls._int('computation.max_poly_degree', 8)

    @classmethod
    def MAX_DIMENSION(cls) -> int:
        return cls._int('computation.max_dimension', 4096)

    @classmethod
    def SIMPLICIAL_CONVENTION(cls) -> str:
        return cls._get_nested_value('simplicial.convention', 'standard')

    # Cache Configuration
    @classmethod
    def CACHE_ENABLED(cls) -> bool:
        return cls._get_nested_value('cache.enabled', True)

    @classmethod
    def CACHE_EXPIRY_MINUTES(cls) -> int:
        return cls._int('cache.expiry_minutes', 0)

    # Logging Configuration
    @classmethod
    def LOG_FILE(cls) -> str:
        return cls._get_nested_value('logging.file_path', '')

    @classmethod
    def validate_config(cls) -> Tuple[bool, List[str]]:
        """
        Check the loaded values for settings that cannot work.

        Returns:
            tuple: (is_valid, list of problems)
        """
        problems = []
        if cls.THREADS() < 1:
            problems.append("computation.threads must be at least 1")
        if cls.ENUMERATION_BUDGET() < 0:
            problems.append("computation.enumeration_budget must be non-negative")
        if cls.MAX_POLY_DEGREE() < 0:
            problems.append("computation.max_poly_degree must be non-negative")
        if cls.BATTERY_SIZE() < 1:
            problems.append("computation.battery_size must be positive")
        if cls.SIMPLICIAL_CONVENTION() not in CONVENTIONS:
            problems.append(f"simplicial.convention must be one of {', '.join(CONVENTIONS)}")
        if cls.OUTPUT_FORMAT() not in ('text', 'json'):
            problems.append("application.output_format must be 'text' or 'json'")
        return len(problems) == 0, problems

    @classmethod
    def get_all_config(cls) -> Dict[str, Any]:
        """Get all configuration data."""
        cls._load_config()
        return cls._config_data.copy()

    @classmethod
    def reload_config(cls):
        """Reload configuration from file."""
        cls._config_data = None
        cls._config_file_path = None
        cls._load_config()


TOML_CONFIG_TEMPLATE = """
# Moduli Desk Configuration

[application]
name = "moduli-desk"
log_level = "WARNING"          # DEBUG, INFO, WARNING, ERROR
output_format = "text"         # text or json

[computation]
threads = 1                    # overridden by MODULI_DESK_THREADS
default_seed = 20240601        # seed for randomized batteries
battery_size = 100
enumeration_budget = 1000000   # max |G|^(2g) tuples enumerated by holonomy commands
max_poly_degree = 8            # bound on polynomial path coefficients
max_dimension = 4096

[simplicial]
convention = "standard"        # standard or printed

[cache]
enabled = true
expiry_minutes = 0

[logging]
file_path = ""                 # empty disables the log file
"""
