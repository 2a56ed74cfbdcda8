from pathlib import Path

import pytest

from ontoaqg.rdf import parse_file
from ontoaqg.rdf.ingest import build_knowledge_base

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def planets_kb():
    return build_knowledge_base(parse_file(DATA / "planets.ttl")).kb


@pytest.fixture(scope="session")
def planets_path() -> Path:
    return DATA / "planets.ttl"


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.verdict_lines():
        terminalreporter.write_line(line)
