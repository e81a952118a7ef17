from __future__ import annotations

import pytest

from junglegame.core_model import REFERENCE_IC, REFERENCE_PARAMS
from junglegame.simulate import run


@pytest.fixture(scope="session")
def reference_run():
    """The 3000-unit reference trajectory, shared because it takes a few seconds."""
    return run(REFERENCE_PARAMS, REFERENCE_IC, 3000.0)


@pytest.fixture
def ref():
    return REFERENCE_PARAMS
