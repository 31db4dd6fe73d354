import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[name] = (report.outcome, report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[2])):
        outcome, _ = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit status, parsed JSON report or None)."""
    import json

    from tbcode.cli import main

    def run(*argv):
        status = main([str(a) for a in argv])
        out = capsys.readouterr().out
        return status, (json.loads(out) if out.strip() else None)

    return run
