import pytest

from codepth3.appendix import truncated_exterior_ratio, verify_all, verify_formula
from codepth3.galg import APPENDIX_FORMULAS
from codepth3.linalg import Field


@pytest.mark.parametrize("formula", APPENDIX_FORMULAS)
def test_formula_matches_oracle(formula):
    results = verify_formula(formula, 8)
    assert len(results) >= 10
    bad = [r.label for r in results if not r.ok]
    assert not bad, bad


def test_rationals_agree():
    results = verify_formula("nullI", 6, field=Field(0))
    assert all(r.ok for r in results)


def test_truncated_exterior_checkpoint():
    # 3t^-2 - 3 + t^2 on the window t^-2 .. t^8
    assert truncated_exterior_ratio(8) == [3, 0, -3, 0, 1] + [0] * 6


def test_unknown_formula():
    with pytest.raises((KeyError, ValueError)):
        verify_formula("nosuch", 4)
