import numpy as np
import pytest

from schwarzaudit.factory import random_ozaki_member

POPULATION_SEED = 20241015
SAMPLE_SEED = 1

_acceptance_lines: list[str] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    """Log one acceptance line; printed in the terminal summary."""
    _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def disk_samples(rng: np.random.Generator, n: int, radius: float = 1.0) -> np.ndarray:
    """Area-uniform points in the disk of the given radius."""
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


@pytest.fixture(scope="session")
def population():
    """100 seeded F0(lambda) members (lambda ~ U[1/2, 1])."""
    rng = np.random.default_rng(POPULATION_SEED)
    return [random_ozaki_member(rng) for _ in range(100)]


@pytest.fixture(scope="session")
def origin_population(population):
    """Members whose Schwarz function vanishes at 0 (equivalently f''(0) = 0)."""
    return [f for f in population if abs(f.phi.value_at_origin()) == 0.0]


@pytest.fixture
def rng():
    return np.random.default_rng(SAMPLE_SEED)
