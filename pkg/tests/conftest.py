import zlib

import numpy as np
import pytest

from srgwalk.graph import paley, rook4x4, shrikhande

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def rook():
    return rook4x4()


@pytest.fixture(scope="session")
def shri():
    return shrikhande()


@pytest.fixture(scope="session")
def srgs(rook, shri):
    return {"rook4x4": rook, "shrikhande": shri, "paley13": paley(13), "paley17": paley(17)}


@pytest.fixture
def rng(request):
    # per-test seed so failures reproduce
    return np.random.default_rng(zlib.crc32(request.node.nodeid.encode()))


@pytest.fixture
def acceptance(request):
    """record(number, ok, detail): log one criterion line and fail the test if not ok."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, ok, detail):
        lines.append((number, bool(ok), detail))
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(lines):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}")
