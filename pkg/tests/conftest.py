import sys
from pathlib import Path

import pytest

from frikit.rulebase import LinguisticPartition, Observation, Rule, RuleBase
from frikit.sets import triangle

FIXTURES = Path(__file__).parent / "fixtures"


def two_rule_base(a1, a2, b1, b2, x_range=None, y_range=None) -> RuleBase:
    """Single-input base A1 -> B1, A2 -> B2."""
    x_range = x_range or (min(a1.xs[0], a2.xs[0]) - 1, max(a1.xs[-1], a2.xs[-1]) + 1)
    y_range = y_range or (min(b1.xs[0], b2.xs[0]) - 1, max(b1.xs[-1], b2.xs[-1]) + 1)
    x = LinguisticPartition("x", x_range, (a1, a2))
    y = LinguisticPartition("y", y_range, (b1, b2))
    return RuleBase((x,), y, (Rule((0,), 0), Rule((1,), 1)))


def sym_base():
    return two_rule_base(triangle(0, 1, 2, "A1"), triangle(8, 9, 10, "A2"),
                         triangle(20, 21, 22, "B1"), triangle(28, 29, 30, "B2"), (0, 10), (20, 30))


@pytest.fixture
def s1():
    return sym_base(), Observation((triangle(4, 5, 6, "A*"),))


@pytest.fixture
def i1():
    return sym_base(), Observation((triangle(0, 1, 2, "A*"),))


@pytest.fixture
def d1():
    rb = two_rule_base(triangle(0, 1, 2), triangle(7, 9, 11), triangle(1, 2, 4), triangle(8, 10, 11),
                       (0, 12), (0, 12))
    return rb, Observation((triangle(3, 4, 5, "A*"),))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
