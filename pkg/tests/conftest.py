import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (ok, detail)."""
    name = request.node.name

    def record(ok, detail=""):
        _ACCEPTANCE[name] = (bool(ok), detail)
        assert ok, detail

    return record


def pytest_runtest_logreport(report):
    # a criterion that errored before recording still needs a FAIL line
    if report.when == "call" and report.failed and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.setdefault(name, (False, "raised before recording"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
