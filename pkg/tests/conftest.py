import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from hornkit.lattice import Vec2, cross
from hornkit.system import HornSystem

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "hornkit" / "fixtures"


def load_system(name: str) -> HornSystem:
    with open(FIXTURES / f"{name}.json") as fh:
        return HornSystem.from_json(json.load(fh))


def load_expected(name: str) -> dict:
    with open(FIXTURES / "expected" / f"{name}.expected.json") as fh:
        return json.load(fh)


def random_nonconfluent_system(rng: random.Random, max_m: int = 7,
                               bound: int = 3) -> HornSystem:
    """Nonconfluent rank-2 system with entries in [-bound, bound] and random
    rational parameters with large denominators."""
    while True:
        m = rng.randint(2, max_m - 1)
        rows = []
        for _ in range(m):
            while True:
                r = (rng.randint(-bound, bound), rng.randint(-bound, bound))
                if r != (0, 0):
                    rows.append(r)
                    break
        last = (-sum(r[0] for r in rows), -sum(r[1] for r in rows))
        if last == (0, 0) or max(abs(last[0]), abs(last[1])) > bound:
            continue
        rows.append(last)
        vs = [Vec2(*r) for r in rows]
        if all(cross(vs[0], v) == 0 for v in vs[1:]):
            continue
        params = [Fraction(rng.randint(1, 10**7), 10**7 + rng.randint(1, 997))
                  for _ in rows]
        return HornSystem.make(rows, params)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = {}
    for status in ("passed", "failed", "xfailed", "xpassed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in name:
                continue
            key = name.split("test_criterion_")[1]
            tag = key.split("_")[0]
            label = key[len(tag) + 1:] or key
            if status == "passed":
                verdict = "PASS"
            elif status == "xfailed":
                verdict = "FAIL (expected: documented source discrepancy)"
            else:
                verdict = "FAIL"
            lines.setdefault((tag, label), verdict)
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for (tag, label), verdict in sorted(lines.items()):
            terminalreporter.write_line(f"  criterion {tag} ({label}): {verdict}")


@pytest.fixture
def zonotope():
    return load_system("zonotope")


@pytest.fixture
def triangle_sides():
    return load_system("triangle_sides")


@pytest.fixture
def triangle_simplex():
    return load_system("triangle_simplex")


@pytest.fixture
def atomic_32_43():
    return load_system("atomic_32_43")


@pytest.fixture
def quadrilateral():
    return load_system("quadrilateral")
