import os
import pathlib

# cofactor identities are re-checked inside every tracked computation
os.environ.setdefault("ITX_DEBUG", "1")

import pytest  # noqa: E402

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

ACCEPTANCE = {}


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.2f}s) {detail}")
