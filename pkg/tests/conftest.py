import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# Timing-sensitive JIT warmup and shared-machine noise make wall-clock
# deadlines meaningless here.
settings.register_profile(
    "transclust",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=40,
)
settings.load_profile("transclust")


def random_points(seed: int, n: int, dim: int = 2) -> np.ndarray:
    return np.random.RandomState(seed).rand(n, dim)


@pytest.fixture
def rng_points():
    return random_points


# Acceptance tests register a one-line verdict here; printing happens in
# the terminal-summary hook because pytest's fd-level capture would
# otherwise swallow output written while a test is running.
_ACCEPTANCE_LINES: list[str] = []


def record_acceptance_line(text: str) -> None:
    _ACCEPTANCE_LINES.append(text)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
