import sys


def pytest_terminal_summary(terminalreporter):
    lines = []
    for name, module in list(sys.modules.items()):
        if name.endswith("test_acceptance"):
            lines = getattr(module, "ACCEPTANCE_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
