from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from msfuzz import (
    FuzzySet,
    MSAlgebra,
    build_lattice,
    document_to_objects,
    load_fixture,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption(
        "--regen-golden", action="store_true", default=False,
        help="rewrite the golden report files instead of comparing",
    )


@pytest.fixture
def golden(request):
    """Compare bytes against a golden file, or rewrite it under --regen-golden."""

    def check(name: str, data: str) -> None:
        path = GOLDEN_DIR / name
        if request.config.getoption("--regen-golden"):
            GOLDEN_DIR.mkdir(exist_ok=True)
            path.write_text(data)
            return
        assert path.exists(), f"golden file {name} missing; run pytest --regen-golden"
        assert data == path.read_text(), f"output differs from golden {name}"

    return check


def chain(n: int):
    """Chain c0 < c1 < ... < c{n-1}."""
    els = [f"c{i}" for i in range(n)]
    return build_lattice(els, [(els[i], els[i + 1]) for i in range(n - 1)])


@pytest.fixture
def diamond():
    """Plain diamond on {0, a, b, 1}."""
    return build_lattice(["0", "a", "b", "1"],
                         [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def diamond_ms(diamond):
    """Diamond with both midpoints self-negating (a de Morgan algebra)."""
    return MSAlgebra(diamond, {"0": "1", "a": "a", "b": "b", "1": "0"})


@pytest.fixture
def diamond_fixture():
    """The shipped diamond instance: (lattice, algebra, chi)."""
    lat, ms, named = document_to_objects(load_fixture("diamond"))
    return lat, ms, named["chi"]


@pytest.fixture
def example4_printed():
    lat, ms, named = document_to_objects(load_fixture("example4_printed"))
    return lat, ms, named["chi"]


@pytest.fixture
def example4_corrected():
    lat, ms, named = document_to_objects(load_fixture("example4_corrected"))
    return lat, ms, named["chi"]


@pytest.fixture
def three_chain_stone():
    lat, ms, named = document_to_objects(load_fixture("three_chain_stone"))
    return lat, ms, named["chi"]


def grades(*values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def fuzzy(lat, *values) -> FuzzySet:
    return FuzzySet(lat, grades(*values))


def write_fixture_file(tmp_path, name: str) -> str:
    from msfuzz import fixture_text

    path = tmp_path / f"{name}.ms"
    path.write_text(fixture_text(name))
    return str(path)


def json_out(result) -> dict:
    return json.loads(result.output)
