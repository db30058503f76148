import pytest

from schemata import corpus

# criterion number -> (passed, note); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def implchain():
    return corpus.load("implchain.sch")


@pytest.fixture(scope="session")
def examples():
    return corpus.load("examples.sch")


@pytest.fixture(scope="session")
def growth():
    return corpus.load("growth.sch")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {note}")
