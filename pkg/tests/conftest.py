import pytest

from cato_wds.lie.chevalley import build_table
from cato_wds.lie.rootsys import Weight, build_root_system


@pytest.fixture(scope='session')
def a1():
    return build_root_system('A1')


@pytest.fixture(scope='session')
def a2():
    return build_root_system('A2')


@pytest.fixture(scope='session')
def b2():
    return build_root_system('B2')


@pytest.fixture(scope='session')
def g2():
    return build_root_system('G2')


@pytest.fixture(scope='session')
def table_a1(a1):
    return build_table(a1)


@pytest.fixture(scope='session')
def table_a2(a2):
    return build_table(a2)


@pytest.fixture(scope='session')
def table_b2(b2):
    return build_table(b2)


@pytest.fixture(scope='session')
def table_g2(g2):
    return build_table(g2)


@pytest.fixture
def weight():
    return Weight.parse
