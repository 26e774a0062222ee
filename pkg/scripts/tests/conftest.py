"""Pytest configuration and fixtures for the CLI tests."""

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    """Sample configurations and jump files shipped in data/."""
    return Path(__file__).parent.parent.parent / "data"


@pytest.fixture
def write_json(tmp_path: Path):
    """Write a JSON document to tmp_path and return its path."""
    def _write(name: str, payload: object) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return _write
