import random

import pytest

from ncbirational import transform, zalgebra
from ncbirational.curve import Divisor
from ncbirational.sklyanin import sklyanin_algebra


@pytest.fixture(scope="session")
def quad_config():
    return transform.random_generic_config("quadratic", random.Random(101))


@pytest.fixture(scope="session")
def cubic_config():
    return transform.random_generic_config("cubic", random.Random(202))


@pytest.fixture(scope="session")
def quad_algebra(quad_config):
    return sklyanin_algebra(quad_config[0], 10)


@pytest.fixture(scope="session")
def cubic_algebra(cubic_config):
    return sklyanin_algebra(cubic_config[0], 12)


@pytest.fixture(scope="session")
def quad_D(quad_config, quad_algebra):
    gd, pts = quad_config
    return zalgebra.build_D(quad_algebra, gd, Divisor.of_points(gd.curve, pts))


@pytest.fixture(scope="session")
def cubic_D(cubic_config, cubic_algebra):
    gd, pts = cubic_config
    return zalgebra.build_D(cubic_algebra, gd, Divisor.of_points(gd.curve, pts))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
