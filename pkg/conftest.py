import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from tracesimp.benchmark_suite import fig0_instance  # noqa: E402

FIG0_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tracesimp", "data", "fig0.trc")

@pytest.fixture
def fig0():
    """(program, trace) of the two-thread, nine-statement example."""
    _, program, trace = fig0_instance()
    return program, trace

@pytest.fixture
def fig0_path():
    return FIG0_PATH
