import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from convexharm import sampler  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return sampler.build_catalog(seed=0)


@pytest.fixture(scope="session")
def certified(catalog):
    return [s for s in catalog if s.certified]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(n))
