import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("drckit", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("drckit")

DEFAULT_SEED = 20240611


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized corpora (default %(default)s)")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture(scope="session")
def strong_up_to_3():
    from drckit import enumerate_strong_algebras
    return [P for n in (1, 2, 3) for P in enumerate_strong_algebras(n)]


@pytest.fixture(scope="session")
def strong_dedup_up_to_4():
    from drckit import enumerate_strong_algebras
    return [P for n in (1, 2, 3, 4) for P in enumerate_strong_algebras(n, dedup=True)]


@pytest.fixture(scope="session")
def o3_up_to_3():
    from drckit import enumerate_drc_restriction_semigroups
    return [S for n in (1, 2, 3) for S in enumerate_drc_restriction_semigroups(n)]


@pytest.fixture(scope="session")
def o3_up_to_4():
    from drckit import enumerate_drc_restriction_semigroups
    return [S for n in (1, 2, 3, 4) for S in enumerate_drc_restriction_semigroups(n)]
