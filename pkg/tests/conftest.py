"""
Shared fixtures for the refuter test-suite.

Provides the small named structures used across unit, integration and e2e
tests plus helpers for writing them to graph files.
"""

from pathlib import Path

import pytest

from src.refuter.config import reset_settings
from src.refuter.structures.cfi import cfi_pair
from src.refuter.structures.library import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    directed_cycle,
    directed_path,
    path_graph,
    prism_graph,
)
from src.refuter.structures.models import Structure
from src.refuter.structures.parser import save_structure


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings"""
    for name in ("BUDGET_VERTICES", "BUDGET_STEPS", "JOBS", "RESTRICTED_EXT", "RECHECK_FRAGMENTS"):
        monkeypatch.delenv(f"REFUTER_{name}", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def k1() -> Structure:
    """Single vertex, empty edge relation"""
    return complete_graph(1)


@pytest.fixture
def k2() -> Structure:
    return complete_graph(2)


@pytest.fixture
def k3() -> Structure:
    return complete_graph(3)


@pytest.fixture
def c5() -> Structure:
    return cycle_graph(5)


@pytest.fixture
def c6() -> Structure:
    return cycle_graph(6)


@pytest.fixture
def p3() -> Structure:
    """Undirected path on three vertices"""
    return path_graph(3)


@pytest.fixture
def prism() -> Structure:
    return prism_graph()


@pytest.fixture
def k33() -> Structure:
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def dcycle3() -> Structure:
    """Directed 3-cycle"""
    return directed_cycle(3)


@pytest.fixture
def dpath3() -> Structure:
    """Directed path 0 -> 1 -> 2"""
    return directed_path(3)


@pytest.fixture
def cfi_k4() -> tuple[Structure, Structure]:
    """Unordered untwisted and twisted CFI companions over K4"""
    return cfi_pair(complete_graph(4), twisted=True, ordered=False)


@pytest.fixture
def graph_file(tmp_path):
    """Write a structure to a graph file and return its path"""

    def write(structure: Structure, name: str) -> Path:
        path = tmp_path / f"{name}.graph"
        save_structure(structure, path)
        return path

    return write


@pytest.fixture
def empty_trace_file(tmp_path) -> Path:
    path = tmp_path / "empty.trace"
    path.write_text("dwltrace v1 budget_vertices=256 budget_steps=64\n", encoding="utf-8")
    return path
