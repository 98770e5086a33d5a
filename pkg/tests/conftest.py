import pytest

from vinbergcusp.curves import CurveSpec
from vinbergcusp.grading import compute_grading


@pytest.fixture(scope="session")
def g7():
    return compute_grading("E7")


@pytest.fixture(scope="session")
def g8():
    return compute_grading("E8")


@pytest.fixture(scope="session")
def curve7():
    # y^3 = x^3 y + y + 1
    return CurveSpec.make("E7", c12=1, c18=1)


@pytest.fixture(scope="session")
def curve8():
    # y^3 = x^5 + y(x^3 + x^2) + x^3 + 1
    return CurveSpec.make("E8", c2=1, c8=1, c12=1, c30=1)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
