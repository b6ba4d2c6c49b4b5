import json
import socket
from pathlib import Path

import pytest

from chorocolor.dataset import parse_dataset
from chorocolor.gateway import offline_gateway
from chorocolor.palettes import load_palettes
from chorocolor.session import Pipeline

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GDP_PATH = FIXTURES / "data" / "gdp_2023.json"
GEO_PATH = FIXTURES / "data" / "regions.geojson"
LLM_FIXTURES = FIXTURES / "llm"
GOLDEN = FIXTURES / "golden"


@pytest.fixture(scope="session")
def gdp_dataset():
    return parse_dataset(GDP_PATH.read_bytes(), "gdp")


@pytest.fixture(scope="session")
def gdp_values(gdp_dataset):
    return gdp_dataset.values()


@pytest.fixture(scope="session")
def geojson():
    return json.loads(GEO_PATH.read_text("utf-8"))


@pytest.fixture(scope="session")
def palette_db():
    return load_palettes()


@pytest.fixture
def offline_pipeline(palette_db):
    return Pipeline(offline_gateway(LLM_FIXTURES), palette_db)


@pytest.fixture
def no_network(monkeypatch):
    """Any socket connection attempt fails the test."""
    def refuse(self, *args, **kwargs):
        raise AssertionError(f"network access attempted: {args}")
    monkeypatch.setattr(socket.socket, "connect", refuse)
