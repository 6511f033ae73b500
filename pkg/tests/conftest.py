from hypothesis import HealthCheck, settings

settings.register_profile("ratinv", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", deadline=None, max_examples=15,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ratinv")


_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        _CRITERIA.setdefault(name, report.outcome)
        if report.failed:
            _CRITERIA[name] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        status = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {name.split('_')[2]} ({label}): {status}")
