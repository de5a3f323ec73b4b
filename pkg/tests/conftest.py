"""Shared fixtures for skewpbw tests."""
from pathlib import Path
import random

import pytest

from skewpbw.catalog import catalog_algebra

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_path():
    """Path of a ``.spbw`` document under tests/fixtures."""

    def path(name: str) -> Path:
        return FIXTURES / f"{name}.spbw"

    return path


@pytest.fixture
def fixture_text(fixture_path):
    def read(name: str) -> str:
        return fixture_path(name).read_text(encoding="utf-8")

    return read


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def commutative():
    return catalog_algebra("commutative")


@pytest.fixture
def dispin():
    return catalog_algebra("dispin")


@pytest.fixture
def weyl():
    return catalog_algebra("weyl")


@pytest.fixture
def qweyl():
    return catalog_algebra("qweyl")


@pytest.fixture
def ore():
    """K[x; sigma, delta] over Q(q, a, t) with sigma(t) = q*t."""
    return catalog_algebra("ex34_ore")
