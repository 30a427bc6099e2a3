"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the lines, or
through pytest, where the lines are repeated in the terminal summary.
"""

import pytest

from cambrian.acceptance import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.parametrize("name", [name for name, _ in CRITERIA])
def test_criterion(name):
    outcome = run_criterion(name)
    RESULTS.append(outcome)
    print(outcome.line())
    assert outcome.passed, outcome.detail


if __name__ == "__main__":
    import sys

    outcomes = [run_criterion(name) for name, _ in CRITERIA]
    for o in outcomes:
        print(o.line())
    sys.exit(0 if all(o.passed for o in outcomes) else 1)
