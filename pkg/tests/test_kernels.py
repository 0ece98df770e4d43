import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conflow import _pykernels, kernels
from conflow.validator import full_tensor

from conftest import mode_arrays, random_modes

needs_ext = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


def brute_resonant_sum(alpha, szego=False):
    N = len(alpha)
    out = np.zeros(N, dtype=complex)
    for n in range(N):
        for j in range(N):
            for k in range(N):
                m = n + j - k
                if 0 <= m < N:
                    c = 1 if szego else min(n, j, k, m) + 1
                    out[n] += c * np.conj(alpha[j]) * alpha[k] * alpha[m]
    return out


@pytest.mark.parametrize("szego", [False, True])
@given(alpha=mode_arrays(max_size=9))
@settings(max_examples=40, deadline=None)
def test_resonant_sum_matches_loops(alpha, szego):
    expect = brute_resonant_sum(alpha, szego)
    scale = max(1.0, np.max(np.abs(alpha)) ** 3)
    assert np.allclose(kernels.resonant_sum(alpha, szego), expect, atol=1e-12 * scale)
    assert np.allclose(_pykernels.resonant_sum(alpha, szego), expect, atol=1e-12 * scale)


@needs_ext
@pytest.mark.parametrize("N", [1, 2, 7, 16, 33])
@pytest.mark.parametrize("szego", [False, True])
def test_backends_agree_on_resonant_sum(N, szego):
    from conflow import _ckernels

    a = random_modes(N, seed=N)
    ref = _pykernels.resonant_sum(a, szego)
    got = _ckernels.resonant_sum(a, szego)
    assert np.max(np.abs(got - ref)) <= 1e-13 * max(np.max(np.abs(ref)), 1e-300)


@pytest.mark.parametrize("N", [1, 3, 8, 20])
def test_cubic_forcing_matches_dense_tensor(N):
    rng = np.random.default_rng(N)
    c = rng.normal(size=N)
    S = full_tensor(N).dense()
    expect = np.einsum("jkln,j,k,l->n", S, c, c, c)
    assert np.allclose(kernels.cubic_forcing(c), expect, rtol=1e-12, atol=1e-12)
    assert np.allclose(_pykernels.cubic_forcing(c), expect, rtol=1e-12, atol=1e-12)


@needs_ext
@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=24))
@settings(max_examples=30, deadline=None)
def test_backends_agree_on_cubic_forcing(values):
    from conflow import _ckernels

    c = np.array(values)
    ref = _pykernels.cubic_forcing(c)
    assert np.allclose(_ckernels.cubic_forcing(c), ref, rtol=1e-12, atol=1e-12 * max(1.0, np.max(np.abs(c)) ** 3))


@pytest.mark.parametrize("N", [48, 63, 100, 257])
def test_szego_fft_path_matches_direct_sum(N):
    a = random_modes(N, seed=N, norm=3.0)
    direct = kernels.resonant_sum(a, szego=True)
    assert np.max(np.abs(kernels.szego_sum(a) - direct)) <= 1e-13 * np.max(np.abs(direct))


def test_empty_and_zero_inputs():
    assert kernels.resonant_sum(np.zeros(0, dtype=complex)).size == 0
    assert not np.any(kernels.resonant_sum(np.zeros(5, dtype=complex)))
    assert not np.any(kernels.cubic_forcing(np.zeros(5)))


def test_pure_python_switch():
    env = dict(os.environ, CONFLOW_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from conflow import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
