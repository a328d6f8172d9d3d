import itertools
import math
import random
from fractions import Fraction

import pytest

from extcontent import kernels
from extcontent.matrix import Matrix, Mode


def leibniz_det(rows):
    """Permutation-sum determinant; oracle independent of every elimination path."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term *= rows[i][p]
        total += term
    return total


def pascal(n_max):
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(n - 1)] + [1])
    return rows


def exact(rows):
    return Matrix.from_rows(rows, Mode.EXACT)


def flt(rows):
    return Matrix.from_rows(rows, Mode.FLOAT)


@pytest.fixture
def rng():
    return random.Random(20241019)


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    return kernels.backends()[request.param]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
