import sys
from pathlib import Path

# Make the sibling helper module (lputil) importable from any test.
sys.path.insert(0, str(Path(__file__).parent))

# Filled by test_acceptance; printed at the end of the run.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok, seconds, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {num:2d} [{status}] {name} ({seconds:.1f}s)"
        if detail:
            line += f" :: {detail}"
        terminalreporter.write_line(line)
