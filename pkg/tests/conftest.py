from __future__ import annotations

import pytest

from minorlab import repcore
from minorlab.rootweyl import cartan_matrix


@pytest.fixture(scope="session")
def a2():
    return cartan_matrix("A2")


@pytest.fixture(scope="session")
def g2():
    return cartan_matrix("G2")


@pytest.fixture(scope="session")
def f4():
    return cartan_matrix("F4")


@pytest.fixture(scope="session")
def e8():
    return cartan_matrix("E8")


@pytest.fixture(scope="session")
def v3_a2(a2):
    return repcore.irreducible(a2, a2.fundamental_weight(1))


@pytest.fixture(scope="session")
def v7_g2(g2):
    return repcore.irreducible(g2, g2.fundamental_weight(2))


@pytest.fixture(scope="session")
def v26_f4(f4):
    return repcore.irreducible(f4, f4.fundamental_weight(4))
