import sys

import hypothesis
import numpy as np
import pytest

from chaoswm.image_io import synth_test_image

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

MESSAGE = (
    "Chaotic iterations scatter these words over two low bit planes;\n"
    "Reed-Solomon parity brings them back intact!!"
)


@pytest.fixture(scope="session")
def message():
    assert len(MESSAGE) == 109
    return MESSAGE


@pytest.fixture(scope="session")
def cover256():
    return synth_test_image(256, 256, seed=3)


@pytest.fixture(scope="session")
def cover512():
    return synth_test_image(512, 512, seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results:
        terminalreporter.write_line(line)
