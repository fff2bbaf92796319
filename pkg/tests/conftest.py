from collections import defaultdict

_RESULTS = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when == "call" or report.failed:
        n = report.user_properties and dict(report.user_properties).get("criterion")
        if n:
            _RESULTS[n].append(report.passed)


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        ok = all(_RESULTS[n])
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({len(_RESULTS[n])} checks)")
