import contextlib
import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from boundent.tiles import rho_b, singlet, tiles_projector

settings.register_profile(
    "boundent", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("boundent")

_CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def pb():
    return tiles_projector()


@pytest.fixture(scope="session")
def rhob():
    return rho_b()


@pytest.fixture(scope="session")
def psi():
    return singlet()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def random_density(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_unit(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def _record(label: str, budget_s: float | None = None):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            if budget_s is not None:
                assert elapsed < budget_s, f"{label}: {elapsed:.1f}s exceeds {budget_s}s budget"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            _CRITERIA.append(f"{status}  {label}  ({elapsed:.2f}s)")

    return _record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
