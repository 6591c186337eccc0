import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from catcomp import fixtures as F
from catcomp.serialize import Workspace

ROOT = Path(__file__).resolve().parent.parent
WORKSPACE = ROOT / "fixtures" / "workspace"
COUNTEREXAMPLES = ROOT / "fixtures" / "counterexamples"
GOLDEN = Path(__file__).resolve().parent / "golden"

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def workspace():
    return Workspace.load(directories=[WORKSPACE])


@pytest.fixture(scope="session")
def counter_workspace():
    return Workspace.load(directories=[COUNTEREXAMPLES])


@pytest.fixture
def cat2():
    return F.cat2()


@pytest.fixture
def diamond():
    return F.diamond()


@pytest.fixture
def mon2():
    return F.mon2()


ALL_CATEGORIES = [F.cat2, F.mon2, F.diamond, F.doubled_diamond, F.one, F.par, F.open_cospan]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
