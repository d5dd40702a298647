from __future__ import annotations

import pytest

from tubular_jsj.fixtures import fix_d33, fix_dcomm, fix_g2, fix_grid33, single_tube_on_a


@pytest.fixture(scope="session")
def dcomm():
    return fix_dcomm()


@pytest.fixture(scope="session")
def d33():
    return fix_d33()


@pytest.fixture(scope="session")
def g2():
    return fix_g2()


@pytest.fixture(scope="session")
def grid():
    return fix_grid33()


@pytest.fixture(scope="session")
def lonely_b():
    return single_tube_on_a()
