import pytest

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.fixture
def report(request):
    """Lets an acceptance test attach a short note to its summary line."""
    notes = []
    request.node.user_properties.append(("notes", notes))
    return notes.append


def pytest_runtest_logreport(report):
    marker = report.user_properties and dict(report.user_properties)
    if not marker or "criterion" not in marker:
        return
    n, title = marker["criterion"]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[n] = (title, report.outcome, marker.get("notes") or [], report.duration)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, outcome, notes, dt = _CRITERIA[n]
        status = "PASS" if outcome == "passed" else "FAIL"
        extra = f" [{'; '.join(notes)}]" if notes else ""
        terminalreporter.write_line(f"criterion {n:2d} {status}  {title} ({dt:.1f}s){extra}")
