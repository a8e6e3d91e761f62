import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20231015)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS.values():
            terminalreporter.write_line(line)
