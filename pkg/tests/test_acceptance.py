"""One test per acceptance criterion; each prints its pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import pytest

from covhom.acceptance import CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(criterion):
    res = criterion(DEFAULT_SEED)
    print(res.line())
    for failure in res.failures:
        print(f"    {failure}")
    assert res.passed, "; ".join(res.failures) or res.line()
