"""The fourteen acceptance criteria, one test each.

Each test prints its PASS/FAIL line; the lines are also collected and
shown together in the terminal summary.
"""

import pytest

from geiser.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"{n:02d}-{CRITERIA[n][1]}")
def test_criterion(number, acceptance_lines):
    result = run_criterion(number)
    line = result.line()
    acceptance_lines[number] = line
    print(line)
    assert result.passed, result.detail
