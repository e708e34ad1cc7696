from acceptance_log import LINES


def pytest_terminal_summary(terminalreporter):
    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(LINES, key=lambda k: [int(x) if x.isdigit() else x for x in k.replace("-", ".").split(".")]):
        terminalreporter.write_line(LINES[key])
