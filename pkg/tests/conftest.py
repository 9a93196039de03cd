"""Collects acceptance-criterion outcomes and prints one verdict line per criterion."""

import pytest

_VERDICTS: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    prev = _VERDICTS.get(number)
    if rep.when == "call" or failed:
        verdict = "FAIL" if failed or (prev and prev[0] == "FAIL") else "PASS"
        _VERDICTS[number] = (verdict, title, rep.duration if rep.when == "call" else 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        verdict, title, secs = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {title}  ({secs:.2f} s)")
