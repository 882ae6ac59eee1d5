import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from toricschemes.fan import fan_from_maximal_cones  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FANS = {
    "p1": (1, [(1,), (-1,)], [[0], [1]]),
    "p2": (2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]]),
    "p1xp1": (2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [[0, 2], [0, 3], [1, 2], [1, 3]]),
    "f1": (2, [(1, 0), (0, 1), (-1, 1), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]]),
    "p112": (2, [(1, 0), (0, 1), (-1, -2)], [[0, 1], [1, 2], [0, 2]]),
    "blowup": (2, [(1, 0), (0, 1), (1, 1)], [[0, 2], [1, 2]]),
    "orthant": (2, [(1, 0), (0, 1)], [[0, 1]]),
    "single_ray": (2, [(1, 0)], [[0]]),
    "cone_over_square": (3, [(1, 1, 1), (1, -1, 1), (-1, -1, 1), (-1, 1, 1)], [[0, 1, 2, 3]]),
    "a1": (2, [(1, 0), (1, 2)], [[0, 1]]),
}

COMPLETE = {"p1", "p2", "p1xp1", "f1", "p112"}
FULL = set(FANS) - {"single_ray"}
SIMPLICIAL = set(FANS) - {"cone_over_square"}


def make_fan(name):
    n, rays, cones = FANS[name]
    return fan_from_maximal_cones(n, rays, cones)


@pytest.fixture(scope="session")
def fans():
    return {name: make_fan(name) for name in FANS}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
