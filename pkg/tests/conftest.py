import sys
from pathlib import Path

import pytest

from drsa import io

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def load(name: str):
    return io.parse_table((FIXTURES / f"{name}.json").read_text(encoding="utf-8"))


@pytest.fixture
def t1():
    return load("T1")


@pytest.fixture
def t2():
    return load("T2")


@pytest.fixture
def t3():
    return load("T3")


@pytest.fixture
def p1():
    return load("P1")


def objs(*names):
    return frozenset(names)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.report_lines():
        terminalreporter.write_line(line)
