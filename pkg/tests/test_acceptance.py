"""Acceptance criteria, each at its stated tolerance and time limit.

Every criterion prints one ``[PASS]``/``[FAIL]`` line; the lines are also
repeated in the terminal summary. Run alone with
``pytest tests/test_acceptance.py -s``.
"""
import pytest

from conflow import acceptance

RESULTS = []


@pytest.mark.acceptance
@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    result = acceptance.run_criterion(number)
    RESULTS.append(result.line())
    print(result.line())
    assert result.passed, result.line()
