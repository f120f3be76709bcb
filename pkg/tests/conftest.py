"""
Shared fixtures for the Moduli Desk test suite.
"""
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import build_dgla, sl2, torus_gca  # noqa: E402
from src.deformation import DeformationSpace, dual_numbers  # noqa: E402
from src.utils.cache import cache_manager  # noqa: E402

DATA_DIR = PROJECT_ROOT / 'data'


@pytest.fixture(autouse=True)
def fresh_cache():
    """Builtins are memoized process-wide; start every test from an empty cache."""
    cache_manager.clear_all()
    yield
    cache_manager.clear_all()


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def data_file():
    def resolve(name: str) -> str:
        return str(DATA_DIR / name)
    return resolve


@pytest.fixture
def in_project(monkeypatch):
    monkeypatch.chdir(PROJECT_ROOT)
    return PROJECT_ROOT


@pytest.fixture
def torus_sl2_space() -> DeformationSpace:
    """torus_gca(2) ⊗ sl2 over the dual numbers."""
    return DeformationSpace(build_dgla(torus_gca(2), sl2()), dual_numbers())
