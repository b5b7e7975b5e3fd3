import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lsob.sampler import Stream, draw_state

settings.register_profile(
    "lsob",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lsob")


@pytest.fixture
def rng():
    return Stream(20240607, 0)


def random_pair(rng, d, ensemble="hilbert_schmidt"):
    """Full-rank sigma and a rho from ``ensemble``."""
    return draw_state(d, rng), draw_state(d, rng, ensemble)


def bell_state():
    psi = np.zeros(4)
    psi[0] = psi[3] = 1 / np.sqrt(2)
    return np.outer(psi, psi)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
