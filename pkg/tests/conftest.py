import pytest

from detinterp.analysis import assemble_F
from detinterp.multipoly import parse_poly
from detinterp.scenario_io import load_scenario

# Factored form of the B3 determinant, F = -1728 * H * G.
H_B3_TEXT = "a*b^3*c^3*(a+b-c)*(a-b+c)"
G_B3_TEXT = ("c^3x^3y-c^3xy^3-b^3x^3z+3ab^2x^2yz-3ac^2x^2yz-3a^2bxy^2z+3bc^2xy^2z"
             "+a^3y^3z+3a^2cxyz^2-3b^2cxyz^2+b^3xz^3-a^3yz^3")
# The unexpected quartic Q_B, written out by hand in a different grouping.
Q_B_TEXT = ("3a(b^2-c^2)x^2yz + 3b(c^2-a^2)xy^2z + 3c(a^2-b^2)xyz^2"
            " + a^3y^3z - a^3yz^3 + b^3xz^3 - b^3x^3z + c^3x^3y - c^3xy^3")

B3_POINTS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1)]
P9 = (0, 1, -1)

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def b3():
    return load_scenario("b3")


@pytest.fixture(scope="session")
def p1():
    return load_scenario("p1")


@pytest.fixture(scope="session")
def f4():
    return load_scenario("f4")


@pytest.fixture(scope="session")
def F_b3(b3):
    return assemble_F(b3)


@pytest.fixture(scope="session")
def F_p1(p1):
    return assemble_F(p1)


@pytest.fixture(scope="session")
def H_b3():
    return parse_poly(H_B3_TEXT, 2)


@pytest.fixture(scope="session")
def G_b3():
    return parse_poly(G_B3_TEXT, 2)


@pytest.fixture(scope="session")
def printed_F(H_b3, G_b3):
    return (H_b3 * G_b3).scale(-1728)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
