import random
import sys
from fractions import Fraction

import pytest

from symtrop.core import TropicalMatrix


def random_symmetric(rng: random.Random, n: int, lo: int = 0, hi: int = 4,
                     den: int = 1) -> TropicalMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = Fraction(rng.randint(lo * den, hi * den), den)
    return TropicalMatrix(rows, symmetric=True)


def random_matrix(rng: random.Random, n: int, m: int | None = None, lo: int = -5,
                  hi: int = 5, den: int = 1) -> TropicalMatrix:
    m = n if m is None else m
    return TropicalMatrix([[Fraction(rng.randint(lo * den, hi * den), den) for _ in range(m)]
                           for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
