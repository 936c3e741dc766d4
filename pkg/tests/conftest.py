import random

import pytest

from latticealg import MorphismFamily, fixture_a, fixture_b, uniform_reference
from latticealg.gibbs import Hamiltonian, gibbs_reference

BETAS = ("0", "1/2", "1", "2", "4")


@pytest.fixture(scope="session")
def fam_a():
    return fixture_a()


@pytest.fixture(scope="session")
def fam_b():
    return fixture_b()


@pytest.fixture(scope="session")
def uniform_a(fam_a):
    return MorphismFamily(uniform_reference(fam_a.universe))


@pytest.fixture(scope="session")
def gas_a(fam_a):
    return Hamiltonian.lattice_gas(fam_a.universe)


@pytest.fixture(scope="session")
def gibbs_a(gas_a):
    return MorphismFamily(gibbs_reference(gas_a, 1))


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in list(__import__("sys").modules.items()) if name.endswith("test_acceptance")), None)
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module._line(n))
