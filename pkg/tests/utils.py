"""Pytest functions for the tests collection."""
import os
from os import path
from pathlib import Path

import pytest

import bettisect
from bettisect._helpers import EngineConfig
from bettisect._helpers import FieldSpec

ASSETS_PATH = Path(path.dirname(path.abspath(__file__))) / "assets"

ENGINE_ASSETS_PATH = ASSETS_PATH / "engine"
RATIONAL_CONFIG = ENGINE_ASSETS_PATH / "rational.yaml"
BAD_KEY_CONFIG = ENGINE_ASSETS_PATH / "bad_key.yaml"
BAD_FIELD_CONFIG = ENGINE_ASSETS_PATH / "bad_field.yaml"

GRAPH_ASSETS_PATH = ASSETS_PATH / "graphs"
PATH_2111_GRAPH = GRAPH_ASSETS_PATH / "path_2111.json"
HEAVY_TRIANGLE_GRAPH = GRAPH_ASSETS_PATH / "triangle_heavy.json"
ISOLATED_VERTEX_GRAPH = GRAPH_ASSETS_PATH / "isolated_vertex.json"

# Small sweeps keeping the harness tests fast
SMALL_CONFIG = EngineConfig(lattice_cap=20000, oracle_cap=12)
RATIONAL = FieldSpec(characteristic=0)
GF2 = FieldSpec(characteristic=2)


@pytest.fixture(name="setup_rational")
def fixture_setup_rational():
    """Point the engine configuration to the rational-field asset."""
    os.environ["BETTISECT_CONFIG"] = str(RATIONAL_CONFIG)
    if "BETTISECT_CACHE" in os.environ.keys():
        del os.environ["BETTISECT_CACHE"]

    bettisect._helpers.EngineSettings().clear()


@pytest.fixture(scope="function", autouse=True)
def setup_logger():
    """Set up the logger object."""
    for variable in ("BETTISECT_CONFIG", "BETTISECT_CACHE"):
        if variable in os.environ.keys():
            del os.environ[variable]
    bettisect._helpers.Logger().clear()
    bettisect._helpers.EngineSettings().clear()
