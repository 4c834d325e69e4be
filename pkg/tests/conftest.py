import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_PREFIX = "tests/test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of a run."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                name = nodeid.split("::", 1)[1]
                tag = name.split("_")[2]
                digits = "".join(ch for ch in tag if ch.isdigit())
                label = "PASS" if status == "passed" else "FAIL"
                lines.append((int(digits), tag, f"criterion {tag:>3} {label}  ({name})"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for _, _, line in sorted(lines):
            terminalreporter.write_line(line)
