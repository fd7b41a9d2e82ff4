import re
import sys
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

import pytest

from belgames.games import BelGame, Contract, TUGame

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "scripts"))

DATA = ROOT / "src" / "belgames" / "data"
WORKED_EXAMPLE = DATA / "worked_example.json"


def worked_example() -> BelGame:
    """Three symmetric players, two equally likely states."""
    v1 = TUGame.symmetric((2, 6, 10))
    v2 = TUGame.symmetric((0, 4, 8))
    return BelGame.probabilistic_game((Fraction(1, 2), Fraction(1, 2)), (v1, v2))


@pytest.fixture
def g4():
    return worked_example()


@pytest.fixture
def pv1():
    return Contract.from_columns([(2, 4, 4), (0, 4, 4)])


@pytest.fixture
def greedy():
    return Contract.from_columns([(10, 0, 0), (8, 0, 0)])


# -- per-criterion acceptance summary ----------------------------------------

_criteria = defaultdict(list)
_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d+)_")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m and (report.when == "call" or report.outcome != "passed"):
        _criteria[int(m.group(1))].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    titles = getattr(sys.modules.get("test_acceptance"), "CRITERIA", {})
    terminalreporter.section("acceptance criteria")
    for k in sorted(set(titles) | set(_criteria)):
        outcomes = _criteria.get(k, [])
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {k:>2}: {status:<7} {titles.get(k, '')} ({len(outcomes)} checks)")
