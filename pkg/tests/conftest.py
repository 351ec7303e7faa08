from fractions import Fraction as F

import numpy as np
import pytest

from ghzparadox import kernels
from ghzparadox.paradox import generate_tripartite

# Qutrit table: X = X(0), Y = X(1/3), Z = X(2/3); gamma per row
QUTRIT_TABLE = {
    (F(0), F(0), F(0)): 0,
    (F(1, 3), F(2, 3), F(0)): 1,
    (F(2, 3), F(1, 3), F(0)): 1,
    (F(0), F(2, 3), F(1, 3)): 1,
    (F(1, 3), F(1, 3), F(1, 3)): 1,
    (F(2, 3), F(0), F(1, 3)): 1,
}

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def qutrit():
    return generate_tripartite(3, 1)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timed tests measure work, not JIT."""
    coeffs = np.ones((1, 1), dtype=np.int64)
    rhs = np.zeros(1, dtype=np.int64)
    kernels.first_solution(coeffs, rhs, np.int64(2), np.int64(2))
    kernels.overlap_grid(3, 0.5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
