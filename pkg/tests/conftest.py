import functools
import sys

import numpy as np
import pytest

from heisenberg_torus.matsushima import build_vector_thetas
from heisenberg_torus.modarith import CoprimePair


@functools.lru_cache(maxsize=None)
def basis_for(r, q, tau=1j):
    return build_vector_thetas(CoprimePair(r, q), tau)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
