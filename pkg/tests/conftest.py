"""Pytest configuration and shared fixtures for the Waldschmidt bound test suite"""

import tempfile
from pathlib import Path
from typing import Iterator

import pytest

from src.config import EngineConfig
from src.config import config as global_config
from src.cremona import SystemSpec
from tests.fixtures import table1_system, table2_system


@pytest.fixture
def temp_dir() -> Iterator[Path]:
    """Create a temporary directory for test files"""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


@pytest.fixture
def config() -> EngineConfig:
    """Provide a fresh default configuration"""
    return EngineConfig()


@pytest.fixture(autouse=True)
def restore_global_config() -> Iterator[None]:
    """Undo in-place changes the CLI makes to the shared configuration"""
    snapshot = global_config.with_overrides()
    yield
    global_config.adopt(snapshot)


@pytest.fixture
def table1() -> SystemSpec:
    return table1_system()


@pytest.fixture
def table2() -> SystemSpec:
    return table2_system()


@pytest.fixture
def sample_config_text() -> str:
    """Provide a key=value configuration file body"""
    return "\n".join(
        [
            "# oracle settings",
            "prime = 1000003",
            "seed = 7",
            "",
            "JOBS = 2",
            "column_cap = 500",
        ]
    )
