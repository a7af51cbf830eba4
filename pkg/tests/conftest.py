"""Shared fixtures and the acceptance summary printer."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

from hardybidisc.symbolcalc import make_trigpoly

# first calls may JIT-compile kernels, so no per-example deadline
settings.register_profile("repo", deadline=None)
settings.load_profile("repo")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def z1_sym():
    return make_trigpoly({(1, 0): 1.0})


@pytest.fixture
def z1bar_sym():
    return make_trigpoly({(-1, 0): 1.0})


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (bool(passed), detail)
    print(f"criterion {criterion:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
