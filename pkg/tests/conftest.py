"""Shared pytest configuration.

Prints a one-line PASS/FAIL summary per acceptance criterion at the end of
the run, so the acceptance gate is readable without digging through the
full log.
"""

import re


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call":
                continue
            nodeid = str(rep.nodeid)
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            match = re.match(r"test_(\d+)_(\w+)", name)
            if not match:
                continue
            num = int(match.group(1))
            label = match.group(2).replace("_", " ")
            rows[num] = (label, "PASS" if outcome == "passed" else "FAIL")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(rows):
        label, verdict = rows[num]
        terminalreporter.write_line(f"criterion {num:2d} ({label}): {verdict}")
