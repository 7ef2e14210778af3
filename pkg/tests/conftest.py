import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from dcbctmn import load_fixture  # noqa: E402


@pytest.fixture
def fixture():
    return load_fixture


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
