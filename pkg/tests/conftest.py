import pytest

_OUTCOMES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _OUTCOMES.setdefault(marker.args[0], []).append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        parts = _OUTCOMES[n]
        ok = all(p for _, p in parts)
        failed = [name for name, p in parts if not p]
        line = "criterion %d: %s (%d test%s)" % (n, "PASS" if ok else "FAIL", len(parts),
                                                 "" if len(parts) == 1 else "s")
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
