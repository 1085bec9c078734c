import random
from fractions import Fraction

import pytest

F = Fraction


def rand_in(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 10**9) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randrange(den + 1), den)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
