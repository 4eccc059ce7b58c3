import numpy as np
import pytest

from vscan import _fallback, _backend

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = mark.args
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _criteria.append((number, title, status, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, name in sorted(_criteria):
        terminalreporter.write_line(f"{status}  AC{number}  {title}  ({name})")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def kernel_modules():
    mods = [_fallback]
    if _backend.BACKEND == "compiled":
        mods.append(_backend.kernels)
    return mods


@pytest.fixture(params=kernel_modules(), ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def kernels(request):
    return request.param
