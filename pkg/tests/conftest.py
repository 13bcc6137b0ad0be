import os

import pytest
from hypothesis import HealthCheck, settings

from leavitt.graph import parse_graph, rose
from oracles import ACCEPTANCE_RESULTS

settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        status, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {detail}")


@pytest.fixture(scope="session")
def census():
    from leavitt.enumeration import small_census

    return small_census()


@pytest.fixture
def r2():
    return rose(2)


@pytest.fixture
def r3():
    return rose(3)


@pytest.fixture
def loop():
    return parse_graph("graph L\nvertex v\nedge e v v\n")


@pytest.fixture
def arrow():
    return parse_graph("graph A\nvertex v\nvertex w\nedge e v w\n")


@pytest.fixture
def line3():
    return parse_graph("graph P\nvertex u\nvertex v\nvertex w\nedge e u v\nedge f v w\n")
