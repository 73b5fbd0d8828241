from __future__ import annotations

import pytest

from aplkit import families
from aplkit.library import corpus


@pytest.fixture
def z2():
    return families.cyclic_group(2)


@pytest.fixture
def z3():
    return families.cyclic_group(3)


@pytest.fixture
def u1():
    return families.u1()


@pytest.fixture
def lz1():
    return families.lz1()


@pytest.fixture
def rz1():
    return families.rz1()


@pytest.fixture
def trivial():
    return families.trivial()


@pytest.fixture(scope="session")
def corpus_monoids():
    return corpus()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
