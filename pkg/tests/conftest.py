import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from mdgabor import _ext  # noqa: E402
from mdgabor.periodic_set import make_periodic_set  # noqa: E402
from mdgabor.signal import GaborSystem, Window, make_system  # noqa: E402

S2 = 1 / math.sqrt(2)


def example_a_windows():
    return [Window(0, [S2, S2]), Window(2, [S2])]


def example_b_windows():
    return [Window(4 * l, [0.5] * 4) for l in range(3)]


@pytest.fixture
def example_a():
    """Two-window Parseval frame, L=2, M=2, N=3."""
    return make_system(2, 3, example_a_windows())


@pytest.fixture
def example_b():
    """Three-window orthonormal basis, L=3, M=4, N=12."""
    return make_system(4, 12, example_b_windows())


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    """Run a test once per kernel implementation."""
    if request.param == "cython":
        mod = _ext.compiled()
        if mod is None:
            pytest.skip("compiled kernels not built")
    else:
        mod = _ext.fallback
    for name in ("correlation_block", "analysis_block", "walnut_apply"):
        monkeypatch.setattr(_ext, name, getattr(mod, name))
    return request.param


def random_window(rng, max_len=6, spread=6, complex_vals=True, allowed=None):
    n = int(rng.integers(1, max_len + 1))
    vals = rng.standard_normal(n) + (1j * rng.standard_normal(n) if complex_vals else 0)
    off = int(rng.integers(-spread, spread + 1))
    w = Window(off, vals)
    if allowed is not None:
        mask = allowed.mask(off, off + n)
        w = Window(off, np.where(mask, vals, 0))
    return w


def random_system(rng, max_L=3, max_M=4, max_N=6, proper_set=False, max_len=6, complex_vals=True):
    M = int(rng.integers(1, max_M + 1))
    N = int(rng.integers(1, max_N + 1))
    L = int(rng.integers(1, max_L + 1))
    s = None
    if proper_set:
        res = [r for r in range(N) if rng.random() < 0.6] or [0]
        s = make_periodic_set(N, res)
    wins = []
    for _ in range(L):
        w = random_window(rng, max_len, complex_vals=complex_vals, allowed=s)
        wins.append(w)
    return GaborSystem(M, N, tuple(wins), s) if s is not None else make_system(M, N, wins)


def random_signal(rng, sys=None, radius=8, complex_vals=True):
    n = 2 * radius + 1
    vals = rng.standard_normal(n) + (1j * rng.standard_normal(n) if complex_vals else 0)
    if sys is not None:
        vals = np.where(sys.set.mask(-radius, radius + 1), vals, 0)
    return Window(-radius, vals)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
