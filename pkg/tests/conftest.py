import pytest

# Populated by tests/test_acceptance.py as its checks run; each entry is
# (number, label, passed).  The terminal summary prints one line per check
# so a log skim shows the verdicts without digging through tracebacks.
ACCEPTANCE_RESULTS = []


def record_acceptance(number: int, label: str, passed: bool) -> None:
    ACCEPTANCE_RESULTS.append((number, label, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance checks")
    for number, label, passed in sorted(ACCEPTANCE_RESULTS):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE #{number} {label}: {verdict}")
