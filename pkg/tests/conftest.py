import pytest

from intensional import OstensiveDefinition, PartialAssignment, gen_logic_task

ACCEPTANCE_LINES = []


@pytest.fixture
def and3():
    return gen_logic_task("AND", 2)


@pytest.fixture
def and3_ostensive(and3):
    goals = {PartialAssignment.parse(p) for p in ("000", "010", "111")}
    return OstensiveDefinition(and3, goals)


def pa(text):
    return PartialAssignment.parse(text)


def pats(states):
    return {str(z) for z in states}


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
