"""Echo the acceptance suite's per-criterion lines after the run.

The acceptance tests record one summary line per passing criterion;
pytest's capture would otherwise swallow them unless run with ``-s``.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "PASS_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
