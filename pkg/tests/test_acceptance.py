"""Acceptance criteria at their stated tolerances; one PASS/FAIL line each."""

import pytest

from tfsynth.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.seconds <= 30.0, f"criterion {number} exceeded the desk-scale budget"
    assert result.passed, result.detail
