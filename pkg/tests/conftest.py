import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from tropfactor import TropicalPoly, complete_graph_basis
from tropfactor.fixtures import basis_fig2, basis_fig3

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@pytest.fixture(scope="session")
def K3():
    return complete_graph_basis(3)


@pytest.fixture(scope="session")
def K4():
    return complete_graph_basis(4)


@pytest.fixture(scope="session")
def K5():
    return complete_graph_basis(5)


@pytest.fixture(scope="session")
def fig2():
    return basis_fig2()


@pytest.fixture(scope="session")
def fig3():
    return basis_fig3()


def random_unit(rng: random.Random, polytope, spread: int = 20) -> TropicalPoly:
    """Unit on ``polytope`` with random rational coefficients on its vertices."""
    return TropicalPoly(tuple(
        (v, Fraction(rng.randint(-spread, spread), rng.randint(1, 3)))
        for v in polytope.vertices))


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
