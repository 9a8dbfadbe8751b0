from functools import lru_cache

import pytest

from difsets.automorphisms import automorphism_group
from difsets.catalog import catalog_group, catalog_ids

SMALL_IDS = [cid for cid in catalog_ids() if cid.order <= 16]


@lru_cache(maxsize=None)
def aut_of(cid):
    return automorphism_group(catalog_group(cid))


@pytest.fixture(scope="session")
def c7():
    return catalog_group((7, 1))


@pytest.fixture(scope="session")
def c15():
    return catalog_group((15, 1))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
