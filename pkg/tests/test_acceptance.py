"""The acceptance gate: every headline criterion at its stated tolerance.

Each test runs one criterion on its full grid and prints the pass/fail
line, so ``pytest tests/test_acceptance.py -v -s`` doubles as the
acceptance report.  ``rootsums verify`` executes the same functions.
"""

import pytest

from rootsums import acceptance

CRITERIA = {check.__name__: check for check in acceptance.ALL_CRITERIA}


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    result = CRITERIA[name]()
    print(result.line())
    assert result.passed, result.line()


def test_stated_runtime_budgets():
    """The clock-bounded criteria finish inside their stated budgets."""
    salie = acceptance.check_salie_identity()
    assert salie.passed and salie.seconds < 60.0
    weyl = acceptance.check_weyl_envelopes()
    assert weyl.passed and weyl.seconds < 600.0
