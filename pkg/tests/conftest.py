from pathlib import Path

import pytest

from tracehom.action import load_action
from tracehom.cenet import compile_net, load_net

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

# printed matrices of the cube example; rows/columns in (state, event tuple) order
CUBE_D1 = [
    [1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, -1, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, -1, 0, 0, -1, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, -1],
]
CUBE_D2 = [
    [-1, -1, 0, 0, 0, 0],
    [1, 0, -1, 0, 0, 0],
    [0, 1, 1, 0, 0, 0],
    [0, 0, 0, -1, -1, 0],
    [0, 0, 0, 1, 0, -1],
    [0, 0, 0, 0, 1, 1],
    [-1, 0, 0, -1, 0, 0],
    [0, -1, 0, 0, -1, 0],
    [1, 0, 0, 1, 0, 0],
    [0, 0, -1, 0, 0, -1],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
]
PIPELINE_D1 = [
    [1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, -1, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, -1, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0, 1, 1, -1, 0],
    [0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, -1],
    [0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1],
]
PIPELINE_D2 = [
    [1, 0, 0, 0],
    [-1, 1, 0, 0],
    [1, 0, 0, 0],
    [0, -1, 1, 0],
    [0, 1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 1, -1],
    [0, 0, 0, 1],
    [0, 0, 0, -1],
    [-1, 0, 0, 1],
    [0, -1, 0, 0],
    [0, 0, -1, 0],
]


@pytest.fixture
def cube():
    return load_action(SAMPLES / "cube_action.json")


@pytest.fixture
def pipeline_net():
    return load_net(SAMPLES / "pipeline_net.json")


@pytest.fixture
def pipeline(pipeline_net):
    return compile_net(pipeline_net)


@pytest.fixture
def samples():
    return SAMPLES


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
