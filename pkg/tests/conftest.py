import hypothesis

hypothesis.settings.register_profile(
    "zetasweep",
    deadline=None,
    derandomize=True,
    max_examples=50,
)
hypothesis.settings.load_profile("zetasweep")

# One line per acceptance criterion, printed after the test summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
