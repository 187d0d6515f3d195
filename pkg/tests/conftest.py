"""Prints one PASS/FAIL line per acceptance criterion at the end of the
pytest run, regardless of output capturing."""

_ACCEPTANCE_RESULTS = {}


def _label(nodeid: str) -> str:
    name = nodeid.split("::")[-1]
    stem = name.removeprefix("test_criterion_")
    number, _, rest = stem.partition("_")
    return f"{number} {rest.replace('_', '-')}"


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    if report.when == "call":
        _ACCEPTANCE_RESULTS[_label(report.nodeid)] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[label]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {label}: {verdict}")
