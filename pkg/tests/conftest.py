from __future__ import annotations

import pytest

# criterion number -> (title, list of (label, passed))
ACCEPTANCE: dict[int, tuple[str, list[tuple[str, bool]]]] = {}


@pytest.fixture
def record():
    """Record one acceptance sub-check and assert it."""

    def _record(criterion: int, title: str, label: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE.setdefault(criterion, (title, []))[1].append((label, bool(passed)))
        assert passed, f"criterion {criterion} [{label}] failed: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, checks = ACCEPTANCE[num]
        failed = [label for label, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {num} ({title}): {status}  {len(checks) - len(failed)}/{len(checks)} sub-checks"
        if failed:
            line += "; failing: " + ", ".join(failed)
        tr.write_line(line)
