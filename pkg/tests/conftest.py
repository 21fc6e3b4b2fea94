import math
import sys

import pytest

from qdrobin.fem import FemProblem
from qdrobin.geometry import DomainSpec
from qdrobin.mesh import build_mesh

SQRT10 = math.sqrt(10.0)


@pytest.fixture(scope="session")
def unit_disk():
    return DomainSpec.disk(1.0)


@pytest.fixture(scope="session")
def ellipse21():
    return DomainSpec.ellipse(2.0, 1.0)


@pytest.fixture(scope="session")
def thin_ellipse():
    return DomainSpec.ellipse(SQRT10, 1.0 / SQRT10)


@pytest.fixture(scope="session")
def trefoil():
    return DomainSpec.polar_star(1.0, [0.0, 0.0, 0.2])


_problems = {}


def fem_problem(domain, level):
    """Session-wide cache so meshes and assemblies are shared between tests."""
    key = (domain, level)
    if key not in _problems:
        _problems[key] = FemProblem(build_mesh(domain, level))
    return _problems[key]


@pytest.fixture(scope="session")
def problem():
    return fem_problem


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
