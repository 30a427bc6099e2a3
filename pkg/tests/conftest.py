def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for outcome in RESULTS:
            terminalreporter.write_line(outcome.line())
