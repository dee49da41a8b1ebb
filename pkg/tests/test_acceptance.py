"""The twelve acceptance criteria, one test each; every run prints its pass/fail line."""
import pytest

from symplabic import acceptance


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA],
                         ids=[f"criterion-{c[0]:02d}" for c in acceptance.CRITERIA])
def test_acceptance_criterion(number, capsys):
    result = acceptance.run(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail
