import pytest

from ncgeo import build_group, class_calculus


@pytest.fixture(scope="session")
def a4():
    return build_group("a4")


@pytest.fixture(scope="session")
def a4_c(a4):
    return class_calculus(a4, "t")


@pytest.fixture(scope="session")
def s3():
    return build_group("s3")


@pytest.fixture(scope="session")
def s3_c(s3):
    return class_calculus(s3, "(12)")


@pytest.fixture(scope="session")
def s4():
    return build_group("s4")


@pytest.fixture(scope="session")
def sl2z3():
    return build_group("sl2z3")
