import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from hurbraid.catalog import load_catalog_group  # noqa: E402
from hurbraid.classes import class_table  # noqa: E402


@functools.lru_cache(maxsize=None)
def group_and_table(name):
    AG = load_catalog_group(name)
    return AG, class_table(AG)


@pytest.fixture(scope="session")
def gt():
    """Accessor: gt(name) -> (AffineGroup, ClassTable), built once per session."""
    return group_and_table



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
