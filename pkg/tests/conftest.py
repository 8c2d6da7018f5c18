import pytest

from typedtrees.trees import Alphabet


@pytest.fixture
def rg() -> Alphabet:
    """Named decorations used in the worked examples, types red and green."""
    return Alphabet.of(["a", "b", "c", "d", "e", "x", "y", "z"], ["red", "green"])


@pytest.fixture
def mono() -> Alphabet:
    return Alphabet.of(["a"], ["red", "green"], {(0, 0): 0})


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
