"""Shipped example instances."""

from __future__ import annotations

from importlib import resources

from .file_format import AlgebraDocument, parse_algebra

FIXTURE_NAMES = (
    "two_chain",
    "three_chain_stone",
    "diamond",
    "example4_printed",
    "example4_corrected",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return (
        resources.files(__package__).joinpath("fixtures").joinpath(f"{name}.ms").read_text()
    )


def load_fixture(name: str) -> AlgebraDocument:
    return parse_algebra(fixture_text(name))
