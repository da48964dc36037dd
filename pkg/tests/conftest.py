import json

import pytest

from jqlagent.fixtures import DESK_NOW, desk_fixture_text, load_desk_store

import acceptance_report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_report.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_report.LINES:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def desk_store():
    return load_desk_store()


@pytest.fixture(scope="session")
def desk_records():
    """The raw JSONL records backing the desk store (oracle input)."""
    return [json.loads(line) for line in desk_fixture_text().splitlines() if line.strip()]


@pytest.fixture(scope="session")
def now():
    return DESK_NOW


@pytest.fixture(scope="session")
def schema(desk_store):
    return desk_store.schema
