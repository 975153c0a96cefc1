import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240517,
                     help="seed for the randomized property suites")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


_criteria: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    prev = _criteria.get(n, ("PASS", 0.0, title))
    ok = prev[0] == "PASS" and not rep.failed
    _criteria[n] = ("PASS" if ok else "FAIL", prev[1] + rep.duration, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, secs, title = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {secs:7.2f}s  {title}")
