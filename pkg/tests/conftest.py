from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from libworld.catalog import parse_catalog
from libworld.params import GenParams
from libworld.pipeline import build_world, load_texts

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "fixtures" / "demo"


@pytest.fixture(scope="session")
def demo_catalog_path() -> Path:
    return FIXTURE_DIR / "catalog.csv"


@pytest.fixture(scope="session")
def demo_catalog(demo_catalog_path):
    return parse_catalog(demo_catalog_path.read_bytes(), "csv", source_name="catalog.csv")


@pytest.fixture(scope="session")
def demo_texts(demo_catalog):
    return load_texts(demo_catalog, FIXTURE_DIR)


@pytest.fixture(scope="session")
def demo_world(demo_catalog, demo_texts):
    return build_world(demo_catalog, GenParams(seed=42), 42, demo_texts)
