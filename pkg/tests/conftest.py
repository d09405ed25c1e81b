import random
from pathlib import Path

import pytest

from simpvol.pseudomanifold import Gluing, Pseudomanifold, validate

FIXTURES = Path(__file__).parent / "fixtures"


def random_pseudomanifold(rng: random.Random, n: int, k: int, glue_fraction: float = 0.8) -> Pseudomanifold:
    """Random valid pairing of faces with random vertex maps."""
    faces = [(i, j) for i in range(k) for j in range(n + 1)]
    rng.shuffle(faces)
    pairs = int(len(faces) * glue_fraction) // 2
    gluings = []
    for p in range(pairs):
        (i, j), (i2, j2) = faces[2 * p], faces[2 * p + 1]
        rest = [v for v in range(n + 1) if v != j2]
        rng.shuffle(rest)
        m = []
        it = iter(rest)
        for v in range(n + 1):
            m.append(j2 if v == j else next(it))
        gluings.append(Gluing.between((i, j), (i2, j2), m))
    P = Pseudomanifold(n, k, tuple(gluings))
    assert validate(P) == []
    return P


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(line)
