from __future__ import annotations

from pathlib import Path

import pytest

from treevrpsd import parse_instance

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def load_corpus_instance(name: str):
    return parse_instance((CORPUS_DIR / f"{name}.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def e1():
    return load_corpus_instance("E1")


@pytest.fixture(scope="session")
def e2():
    return load_corpus_instance("E2")


@pytest.fixture(scope="session")
def e3():
    return load_corpus_instance("E3")


@pytest.fixture(scope="session")
def e4():
    return load_corpus_instance("E4")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo one line per acceptance criterion at the end of the run."""
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
