import pytest

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if rep.when == "call" or item.nodeid not in _RESULTS:
            _RESULTS[item.nodeid] = (doc, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for doc, ok in _RESULTS.values():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {doc}")
