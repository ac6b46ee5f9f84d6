import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from agwinv import diagram  # noqa: E402

# every AgwSquare built during the session; the dual-diagram acceptance check walks these
SQUARES: list = []
ACCEPTANCE_LINES: dict[int, str] = {}

_orig_init = diagram.AgwSquare.__init__


def _recording_init(self, *args, **kwargs):
    _orig_init(self, *args, **kwargs)
    SQUARES.append(self)


diagram.AgwSquare.__init__ = _recording_init


def pytest_collection_modifyitems(session, config, items):
    # acceptance last, so the square registry is full when criterion 3 runs
    items.sort(key=lambda it: "test_acceptance" in it.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)
