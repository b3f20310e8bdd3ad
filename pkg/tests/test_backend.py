"""The compiled kernels and the numpy fallback agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from bnineq import _backend, _kernels_py

try:
    from bnineq import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


@needs_ext
def test_eval_trig(rng):
    c = rng.standard_normal(65) + 1j * rng.standard_normal(65)
    x = rng.uniform(-10, 10, 3000)
    assert np.allclose(_ckernels.eval_trig(c, x), _kernels_py.eval_trig(c, x), rtol=0, atol=1e-11)


@needs_ext
@pytest.mark.parametrize("shift", [0.0, 0.5])
def test_hilbert_window(shift, rng):
    v = rng.standard_normal(40) + 1j * rng.standard_normal(40)
    a = _ckernels.hilbert_window(v, -13, -500, 500, shift)
    b = _kernels_py.hilbert_window(v, -13, -500, 500, shift)
    assert np.allclose(a, b, rtol=0, atol=1e-13)


@needs_ext
def test_sinc_synth(rng):
    v = rng.standard_normal(25) + 0j
    x = np.concatenate([rng.uniform(-50, 50, 500), np.pi * np.arange(-30, 30)])
    a = _ckernels.sinc_synth(v, -12, x)
    b = _kernels_py.sinc_synth(v, -12, x)
    assert np.allclose(a, b, rtol=0, atol=1e-12)


def test_env_var_forces_fallback():
    code = "from bnineq import _backend; print(_backend.BACKEND)"
    env = dict(os.environ, BNINEQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_selected_backend():
    assert _backend.BACKEND == ("cython" if _ckernels is not None else "python")
