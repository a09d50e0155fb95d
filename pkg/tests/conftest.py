import pytest
from hypothesis import HealthCheck, settings

from duval_cylinders.catalog import load_catalog
from duval_cylinders.lattice import DivisorClass

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def cls(*coeffs) -> DivisorClass:
    return DivisorClass(list(coeffs))


def e(k: int, i: int) -> DivisorClass:
    return DivisorClass.basis(k, i)


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def surfaces(catalog):
    return [(entry.label, entry.surface()) for entry in catalog]


# acceptance results, filled by tests/test_acceptance.py and printed at the end
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


@pytest.fixture(scope="session")
def all_fibrations(surfaces):
    """``(label, surface, fibration)`` for every valid fibration of every catalog surface."""
    from duval_cylinders.fibration import valid_fibrations

    return [(label, surface, fib) for label, surface in surfaces for fib in valid_fibrations(surface)]
