import pytest

from ringlab import (
    make_gf,
    make_groupring,
    make_matrix,
    make_triangular,
    make_zmod,
)
from ringlab.groups import cyclic, quaternion8


@pytest.fixture(scope="session")
def z4():
    return make_zmod(4)


@pytest.fixture(scope="session")
def z5():
    return make_zmod(5)


@pytest.fixture(scope="session")
def z6():
    return make_zmod(6)


@pytest.fixture(scope="session")
def z12():
    return make_zmod(12)


@pytest.fixture(scope="session")
def gf4():
    return make_gf(4)


@pytest.fixture(scope="session")
def m2z2():
    return make_matrix(make_zmod(2), 2)


@pytest.fixture(scope="session")
def m2z3():
    return make_matrix(make_zmod(3), 2)


@pytest.fixture(scope="session")
def t2z2():
    return make_triangular(make_zmod(2), 2)


@pytest.fixture(scope="session")
def z2c2():
    return make_groupring(make_zmod(2), cyclic(2))


@pytest.fixture(scope="session")
def z2q8():
    return make_groupring(make_zmod(2), quaternion8())
