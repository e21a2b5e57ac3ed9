import os
from pathlib import Path

import pytest
from hypothesis import settings

from kummerbreak import Field, FieldSpec, load_fieldspec

ROOT = Path(__file__).resolve().parent.parent
FIELDS = ROOT / "fields"

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

STD_SPEC = FieldSpec(3, 2, (2, 2, 1), (3, 3, 1), 10, "STD")


@pytest.fixture(scope="session")
def std():
    return Field(STD_SPEC)


@pytest.fixture(scope="session")
def q9z9():
    return Field(load_fieldspec(FIELDS / "q9z9.field"))


@pytest.fixture(scope="session")
def q3():
    return Field(FieldSpec(3, 1, (0, 1), (-3, 1), 8, "Q3"))


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria 1-10")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
