import pytest

from helpers import load_fixture


@pytest.fixture(scope="session")
def five_class():
    return load_fixture("five_class.json")


@pytest.fixture(scope="session")
def six_class():
    return load_fixture("six_class.json")


@pytest.fixture(scope="session")
def two_user():
    return load_fixture("two_user_seven_class.json")


@pytest.fixture(scope="session")
def fsi():
    return load_fixture("fsi_three_class.json")


@pytest.fixture(scope="session")
def two_user_small():
    return load_fixture("two_user_three_class.json")


@pytest.fixture(scope="session")
def tiny():
    return load_fixture("tiny_two_class.json")
