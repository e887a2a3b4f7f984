import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        title, verdict = acceptance_log.RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
