import pytest

from drinfeld import AField, BasePoly, DrinfeldModule, DualNumbers, make_field


@pytest.fixture(scope="session")
def F2():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def F3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def F4(F2):
    return F2.extension(2)


@pytest.fixture(scope="session")
def F8(F2):
    return F2.extension(3)


@pytest.fixture(scope="session")
def F9(F3):
    return F3.extension(2)


@pytest.fixture(scope="session")
def D2(F2):
    return DualNumbers(F2)


@pytest.fixture(scope="session")
def D4(F4):
    return DualNumbers(F4)


@pytest.fixture(scope="session")
def T2(F2):
    return BasePoly.t(F2)


@pytest.fixture(scope="session")
def carlitz_like(F2):
    """phi_T = tau + tau^2 over (F_2, T -> 0): ordinary at (T)."""
    return DrinfeldModule(AField(F2, F2.zero), [1, 1])


@pytest.fixture(scope="session")
def supersingular_mod(F2):
    """phi_T = tau^2 over (F_2, T -> 0): supersingular at (T)."""
    return DrinfeldModule(AField(F2, F2.zero), [0, 1])
