import sys

import pytest

from crankparity.partitions import build_table

TABLE_MAX = 10_002


@pytest.fixture(scope="session")
def table():
    return build_table(TABLE_MAX)


@pytest.fixture(scope="session")
def small_table():
    return build_table(60)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance.RESULTS.values(), key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
