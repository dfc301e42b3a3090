import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from rachunek.jadro import Siatka  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def siatka():
    return Siatka(1.0, 4)


@pytest.fixture(autouse=True)
def bez_limitu_ze_srodowiska(monkeypatch):
    monkeypatch.delenv("FCHAOS_MAX_TENSOR_ENTRIES", raising=False)
