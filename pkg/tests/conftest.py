import numpy as np
import pytest

from hyperseries import clifford, complex_numbers, octonions, quaternions


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def H():
    return quaternions()


@pytest.fixture(scope="session")
def O():
    return octonions()


@pytest.fixture(scope="session")
def C():
    return complex_numbers()


@pytest.fixture(scope="session")
def R3():
    return clifford(3)


ALGEBRA_FACTORIES = {
    "C": complex_numbers,
    "H": quaternions,
    "O": octonions,
    "Cl2": lambda: clifford(2),
    "Cl3": lambda: clifford(3),
    "Cl4": lambda: clifford(4),
}


@pytest.fixture(params=sorted(ALGEBRA_FACTORIES))
def any_spec(request):
    return ALGEBRA_FACTORIES[request.param]()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
