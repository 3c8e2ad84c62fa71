"""Acceptance battery: the eleven go/no-go checks, one test each.

The battery itself runs once per session (it is the expensive part); the
individual tests then report each criterion's one-line verdict.  Run
``pytest -s tests/test_acceptance.py`` to see the PASS/FAIL table, or
``gradperc paper-suite`` for the same table without pytest.
"""

import pytest

from gradperc import acceptance


@pytest.fixture(scope="module")
def battery():
    return acceptance.run_all(acceptance.DEFAULT_SEED, workers=8)


def test_battery_is_complete(battery):
    assert [r.index for r in battery] == list(range(1, 12))
    assert [r.name for r in battery] == \
        [acceptance.CRITERION_NAMES[i] for i in range(1, 12)]


def _slug(i):
    words = acceptance.CRITERION_NAMES[i].replace("/", " ").split()
    return f"{i:02d}-" + "-".join(w.strip(",=") for w in words[:4])


@pytest.mark.parametrize("index", range(1, 12),
                         ids=[_slug(i) for i in range(1, 12)])
def test_criterion(battery, index):
    r = battery[index - 1]
    print(r.line())
    assert r.passed, r.line()
