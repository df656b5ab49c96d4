_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "acceptance":
            _ACCEPTANCE[report.nodeid] = value


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE, key=lambda n: n.rsplit("_", 1)[-1]):
        terminalreporter.write_line(_ACCEPTANCE[nodeid])
