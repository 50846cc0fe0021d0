from pathlib import Path

import pytest

from itopsys.duality import upset_algebra
from itopsys.lattice import LatticeSpec, build_lattice, chain, residuate, two
from itopsys.posets import FinitePoset, antichain_poset

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def chain3():
    return chain(["0", "a", "1"])


@pytest.fixture
def two_alg():
    return two()


@pytest.fixture
def diamond():
    spec = LatticeSpec(["0", "x", "y", "1"],
                       [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")], covers=True)
    return residuate(build_lattice(spec))


@pytest.fixture
def v_poset():
    return FinitePoset.from_pairs(["b", "t1", "t2"], [("b", "t1"), ("b", "t2")])


@pytest.fixture
def boolean4():
    return upset_algebra(antichain_poset(2))


@pytest.fixture
def v_algebra(v_poset):
    return upset_algebra(v_poset)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_criterion():
    """Record one PASS/FAIL line; the lines are echoed in the terminal summary."""

    def record(number, title, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
