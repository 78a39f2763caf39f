import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from eucalg.core import AlgebraContext, Element  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

coefficient = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def elements(draw, n=None, count=1, max_n=16):
    if n is None:
        n = draw(st.integers(min_value=2, max_value=max_n))
    ctx = AlgebraContext(n)
    out = [Element(np.array(draw(st.lists(coefficient, min_size=n, max_size=n))), ctx) for _ in range(count)]
    return out[0] if count == 1 else tuple(out)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def r4():
    return AlgebraContext(4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
