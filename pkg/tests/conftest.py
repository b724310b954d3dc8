from __future__ import annotations

import pytest

_RESULTS: dict[str, tuple[str, str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    cid, label = mark.args
    failed = report.failed
    if report.when == "call" or failed:
        prev = _RESULTS.get(item.nodeid)
        ok = not failed and (prev is None or prev[2])
        _RESULTS[item.nodeid] = (cid, label, ok)


def _key(cid: str):
    digits = "".join(c for c in cid if c.isdigit())
    return int(digits), cid


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    rows = sorted(_RESULTS.values(), key=lambda x: _key(x[0]))
    for cid, label, ok in rows:
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {cid}: {label}")
    passed = sum(ok for _, _, ok in rows)
    tr.write_line(f"{passed}/{len(rows)} acceptance checks passed")
