"""
Run the built-in self-check suites and summarize them per suite.

Run with ``python3 demos/self_checks.py``. Equivalent to
``fracspec --mode verify`` with a condensed report.
"""

from __future__ import annotations

from collections import defaultdict

from fracspec.verify import all_passed, run_checks

results = run_checks()
by_suite = defaultdict(list)
for res in results:
    by_suite[res.suite].append(res)

for suite, checks in by_suite.items():
    passed = sum(c.passed for c in checks)
    print(f"{suite:10s} {passed}/{len(checks)} passed")
    for c in checks:
        if not c.passed:
            tag = "known discrepancy" if c.known_discrepancy else "FAILED"
            print(f"    {tag}: {c.name} (error {c.error:.3g}, tolerance {c.tolerance:.3g})")

print("overall:", "ok" if all_passed(results) else "FAILED")
