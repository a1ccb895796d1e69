from __future__ import annotations

import json
from pathlib import Path

import pytest

from unmating import parse, parse_file
from unmating.pipeline import run_pipeline

EXAMPLES = Path(__file__).resolve().parent.parent / "examples"

MEYER = EXAMPLES / "meyer_example.json"
JORDAN = EXAMPLES / "symmetric_jordan.json"
REVERSED = EXAMPLES / "reversed.json"

VALID_FIXTURES = [MEYER, JORDAN]


@pytest.fixture(scope="session")
def meyer_spec():
    return parse_file(MEYER)


@pytest.fixture(scope="session")
def jordan_spec():
    return parse_file(JORDAN)


@pytest.fixture(scope="session")
def reversed_spec():
    return parse_file(REVERSED)


@pytest.fixture(scope="session")
def meyer_result(meyer_spec):
    return run_pipeline(meyer_spec, depth=3)


@pytest.fixture(scope="session")
def jordan_result(jordan_spec):
    return run_pipeline(jordan_spec, depth=3)


def meyer_raw() -> dict:
    return json.loads(MEYER.read_text())


def spec_with(mutate) -> "unmating.MapSpec":
    """Parse a mutated copy of the meyer_example fixture."""
    raw = meyer_raw()
    mutate(raw)
    return parse(raw)
