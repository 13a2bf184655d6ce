import sys
import zlib
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from syzkit import grass  # noqa: E402
from syzkit.syzygy import linear_strand  # noqa: E402

P = 101


@pytest.fixture(scope="session")
def gr5():
    return grass.pluecker_ideal(5, P)


@pytest.fixture(scope="session")
def gr6():
    return grass.pluecker_ideal(6, P)


@pytest.fixture(scope="session")
def gr5_strand(gr5):
    return linear_strand(gr5, 3)


@pytest.fixture(scope="session")
def gr6_strand(gr6):
    return linear_strand(gr6, 4)


@pytest.fixture(scope="session")
def k3_curve():
    return grass.mukai_section(3, "curve", seed=0, p=P)


@pytest.fixture(scope="session")
def k4_curve():
    return grass.mukai_section(4, "curve", seed=0, p=P)


@pytest.fixture(scope="session")
def k4_k3():
    return grass.mukai_section(4, "K3", seed=0, p=P)


@pytest.fixture
def rng(request):
    return np.random.default_rng(zlib.crc32(request.node.name.encode()))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
