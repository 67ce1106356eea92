import pytest

from dendric import Substitution, generate_language

TRIB = {"a": "ab", "b": "ac", "c": "a"}
FIB = {"a": "ab", "b": "a"}
TM = {"a": "ab", "b": "ba"}


@pytest.fixture(scope="session")
def trib():
    return Substitution.from_dict(TRIB, "tribonacci")


@pytest.fixture(scope="session")
def fib():
    return Substitution.from_dict(FIB, "fibonacci")


@pytest.fixture(scope="session")
def tm():
    return Substitution.from_dict(TM, "thuemorse")


@pytest.fixture(scope="session")
def L_trib(trib):
    return generate_language(trib, 64)


@pytest.fixture(scope="session")
def L_fib(fib):
    return generate_language(fib, 48)


@pytest.fixture(scope="session")
def L_tm(tm):
    return generate_language(tm, 48)
