import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cyclic_census.catalog import generate_catalog  # noqa: E402

from oracles import alternating5_table  # noqa: E402

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def catalog128():
    return generate_catalog(128)


@pytest.fixture(scope="session")
def catalog512():
    return generate_catalog(512)


@pytest.fixture(scope="session")
def a5_file(tmp_path_factory):
    rows = alternating5_table()
    path = tmp_path_factory.mktemp("cayley") / "a5.txt"
    path.write_text(f"order {len(rows)}\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    return path


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, detail = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
