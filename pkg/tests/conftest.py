"""Shared fixtures and the acceptance-line reporter.

tests/test_acceptance.py records one PASS/FAIL line per criterion via
the record_acceptance fixture; the hook below prints them after the
run so the verdicts are visible even when pytest captures stdout.
Helpers reach test modules as fixtures rather than imports, which
keeps every test module self-contained under importlib import mode.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from swathfill import Raster

ACCEPTANCE_RESULTS: "list[str]" = []


def record_acceptance(name: str, passed: bool, detail: str = "") -> None:
    verdict = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    ACCEPTANCE_RESULTS.append(f"ACCEPTANCE {name}: {verdict}{suffix}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture(name="record_acceptance")
def record_acceptance_fixture():
    return record_acceptance


@pytest.fixture(name="read_jsonl")
def read_jsonl_fixture():
    def read_jsonl(path: Path) -> "list[dict]":
        return [json.loads(line) for line in path.read_text().splitlines()]

    return read_jsonl


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


def make_raster(pixels, alpha=None) -> Raster:
    return Raster(np.asarray(pixels, dtype=np.uint8),
                  None if alpha is None else np.asarray(alpha, dtype=np.uint8))


@pytest.fixture(name="make_raster")
def make_raster_fixture():
    return make_raster


@pytest.fixture
def checker() -> Raster:
    """8x8 red/blue checkerboard, no black pixels."""
    px = np.zeros((8, 8, 3), np.uint8)
    yy, xx = np.mgrid[0:8, 0:8]
    odd = (yy + xx) % 2 == 1
    px[~odd] = (200, 30, 30)
    px[odd] = (30, 30, 200)
    return Raster(px)
