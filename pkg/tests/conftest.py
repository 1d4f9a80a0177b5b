import json
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(20240917))


@pytest.fixture(scope="session")
def regression_bands():
    path = os.path.join(os.path.dirname(__file__), "data", "regression_bands.json")
    with open(path) as fh:
        return json.load(fh)


def random_points(rng, n, r_max=0.95):
    return r_max * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
