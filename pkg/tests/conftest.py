from __future__ import annotations

import pytest

from arrkit import build_a31_3, build_family_12k7


@pytest.fixture(scope="session")
def a19():
    return build_family_12k7(1)


@pytest.fixture(scope="session")
def a312():
    return build_family_12k7(2)


@pytest.fixture(scope="session")
def a313():
    return build_a31_3()
