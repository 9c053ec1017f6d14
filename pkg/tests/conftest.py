import pytest

from fsusy.scalars import FieldContext

PRIMES = (3, 5, 7)


@pytest.fixture(scope="session")
def ctx3():
    return FieldContext(3)


@pytest.fixture(scope="session")
def ctx5():
    return FieldContext(5)


@pytest.fixture(scope="session")
def ctx7():
    return FieldContext(7)


@pytest.fixture(scope="session", params=PRIMES)
def ctx(request):
    return FieldContext(request.param)
