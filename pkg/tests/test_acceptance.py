"""One test per acceptance criterion; each prints its PASS/FAIL line.

The checks live in :mod:`mwfamily.reproduce` so that ``mwfamily verify-paper``
runs exactly the same code.
"""

import pytest

from mwfamily.reproduce import CRITERIA, run_one


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]:02d}-{c[2].__name__}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_one(number)
    with capsys.disabled():
        print("\n" + result.line())
        for d in result.details:
            if not d.startswith("ok"):
                print("    " + d)
    assert result.passed, "\n".join(result.details)
