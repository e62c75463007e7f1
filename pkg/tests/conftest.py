from __future__ import annotations

import re
from pathlib import Path

import pytest

from dagdepth import parse_decomposition, parse_digraph

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: list[tuple[str, str]] = []


def load_graph(name: str):
    path = FIXTURES / name
    return parse_digraph(path.read_text(encoding="utf-8"), str(path))


def load_dec(name: str):
    path = FIXTURES / name
    return parse_decomposition(path.read_text(encoding="utf-8"), str(path))


@pytest.fixture
def fig1():
    return load_graph("fig1.dg")


@pytest.fixture
def fig1_dec():
    return load_dec("fig1.dec")


@pytest.fixture
def fig1_broken():
    return load_dec("fig1_broken.dec")


@pytest.fixture
def fig2():
    return load_graph("fig2.dg")


@pytest.fixture
def fig2_dec():
    return load_dec("fig2.dec")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    match = re.search(r"test_criterion_(\d+)", report.nodeid)
    if match:
        _criteria.append((match.group(1), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, outcome in sorted(_criteria, key=lambda c: int(c[0])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}")
