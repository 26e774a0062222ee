"""Pytest fixtures for the grasshopper library tests."""
from __future__ import annotations

import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from grasshopper.configuration import Configuration, regular_polygon, unit_square as make_unit_square


@pytest.fixture(scope="session")
def project_root() -> str:
    """Return the project root directory."""
    # Go up from tests/ to project root
    return os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def pentagon() -> Configuration:
    """Regular pentagon p_k = zeta^k - 1 in Z[zeta_5]."""
    return regular_polygon(5)


@pytest.fixture
def unit_square() -> Configuration:
    """(0,0), (1,0), (1,1), (0,1) with rational coordinates."""
    return make_unit_square()


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so property tests are reproducible."""
    return random.Random(20240611)
