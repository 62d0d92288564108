def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        import sys
        mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
        RESULTS = getattr(mod, "RESULTS", {})
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        terminalreporter.write_line(RESULTS.get(n, f"criterion {n}: FAIL  (not run)"))
