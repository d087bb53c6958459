from __future__ import annotations

import random
import re
from pathlib import Path

import pytest

from xcover.model import Instance

DATA = Path(__file__).parent / "data"

# rows of the cyclic 4x4 Latin square 1234/2341/3412/4123
LATIN_LISTING = """\
11 R1N1 C1N1
12 R1N2 C2N2
13 R1N3 C3N3
14 R1N4 C4N4
21 R2N2 C1N2
22 R2N3 C2N3
23 R2N4 C3N4
24 R2N1 C4N1
31 R3N3 C1N3
32 R3N4 C2N4
33 R3N1 C3N1
34 R3N2 C4N2
41 R4N4 C1N4
42 R4N1 C2N1
43 R4N2 C3N2
44 R4N3 C4N3
"""

CYCLIC_LATIN_4 = [[1, 2, 3, 4], [2, 3, 4, 1], [3, 4, 1, 2], [4, 1, 2, 3]]

SUDOKU_LISTING = """\
11 R1N1 C1N1 B1N1
12 R1N2 C2N2 B1N2
13 R1N3 C3N3 B2N3
14 R1N4 C4N4 B2N4
21 R2N3 C1N3 B1N3
22 R2N4 C2N4 B1N4
23 R2N1 C3N1 B2N1
24 R2N2 C4N2 B2N2
31 R3N2 C1N2 B3N2
32 R3N1 C2N1 B3N1
33 R3N4 C3N4 B4N4
34 R3N3 C4N3 B4N3
41 R4N4 C1N4 B3N4
42 R4N3 C2N3 B3N3
43 R4N2 C3N2 B4N2
44 R4N1 C4N1 B4N1
"""

SUDOKU_4 = [[1, 2, 3, 4], [3, 4, 1, 2], [2, 1, 4, 3], [4, 3, 2, 1]]

HARDEST_TEXT = (DATA / "hardest.sudoku").read_text()


def random_instance(rng: random.Random, max_cols: int = 12, max_rows: int = 20) -> Instance:
    """Random instance with 20-50% density and a random set of secondary columns."""
    ncols = rng.randint(1, max_cols)
    nrows = rng.randint(0, max_rows)
    density = rng.uniform(0.2, 0.5)
    labels = [f"c{k}" for k in range(ncols)]
    secondary = [lab for lab in labels if rng.random() < 0.3]
    inst = Instance()
    inst.declare_secondary(secondary)
    inst.declare_primary([lab for lab in labels if lab not in secondary])
    for _ in range(nrows):
        row = [lab for lab in labels if rng.random() < density]
        if not row:
            row = [rng.choice(labels)]
        rng.shuffle(row)
        inst.add_row(row)
    return inst


@pytest.fixture
def toy() -> Instance:
    inst = Instance()
    for row in (["a"], ["b"], ["a", "b"]):
        inst.add_row(row)
    return inst


# acceptance summary ---------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(re.match(r"\d+", k).group()), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
