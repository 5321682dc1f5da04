import random
import re

import pytest

from lacolor import groups
from lacolor.groups import Free, Hnn, Letter, Prod, Z

SPEC_FAMILIES = {
    "Z": Z(),
    "prod(Z,Z)": Prod(Z(), Z()),
    "free(Z,Z)": Free(Z(), Z()),
    "hnn(Z,inv)": Hnn(Z(), "inv"),
    "free(prod(Z,Z),Z)": Free(Prod(Z(), Z()), Z()),
}


def random_element(spec, rng: random.Random, size: int = 4):
    """Seeded random element with bounded letters."""
    if isinstance(spec, Z):
        return rng.randint(-size, size)
    if isinstance(spec, Prod):
        return (random_element(spec.left, rng, size), random_element(spec.right, rng, size))
    if isinstance(spec, Hnn):
        return (rng.randint(-size, size), rng.randint(-size, size))
    sides = {"L": spec.left, "R": spec.right}
    side = rng.choice("LR")
    word = []
    for _ in range(rng.randint(0, size)):
        factor = sides[side]
        e = groups.identity(factor)
        v = e
        while v == e:
            v = random_element(factor, rng, size)
        word.append(Letter(side, v))
        side = "R" if side == "L" else "L"
    return tuple(word)


@pytest.fixture
def rng():
    return random.Random(0)


# ---------------------------------------------------------------------------
# one pass/fail line per acceptance criterion

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        prev = _CRITERIA.get(key, "PASS")
        _CRITERIA[key] = prev if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num:2d} {name}: {verdict}")
