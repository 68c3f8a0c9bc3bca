import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import LINEAR_MODEL_LABELS, running_example  # noqa: E402

from uncertain_proc.log import UncertainLog  # noqa: E402
from uncertain_proc.petri import trace_net  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def trace():
    return running_example()


@pytest.fixture
def log(trace):
    return UncertainLog([trace])


@pytest.fixture
def linear_model():
    return trace_net(LINEAR_MODEL_LABELS)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    from oracles import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
