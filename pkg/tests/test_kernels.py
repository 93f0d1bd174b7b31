"""Compiled and pure-Python kernels must agree exactly."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _strategies import posets
from posetlevels import _backend, _pykernels
from posetlevels.levels import LevelDecomposition
from posetlevels.oracle import order_codes

needs_both = pytest.mark.skipif(len(_backend.available_backends()) < 2, reason="compiled kernels not built")


def _scan_args(p):
    l = LevelDecomposition.of(p)
    slc, _ = _pykernels.slc_sweep(p.kernel_matrix, l.order)
    return l, slc


@needs_both
@given(posets(max_size=12), st.integers(1, 6), st.integers(0, 4), st.integers(3, 8))
@settings(max_examples=200, deadline=None)
def test_backends_agree(p, s, r, k):
    py, cy = _backend.get_kernels("python"), _backend.get_kernels("cython")
    lt = p.kernel_matrix
    for a, b in zip(py.level_sweep(lt), cy.level_sweep(lt)):
        assert np.array_equal(a, b)
    l, slc = _scan_args(p)
    for a, b in zip(py.slc_sweep(lt, l.order), cy.slc_sweep(lt, l.order)):
        assert np.array_equal(a, b)
    assert py.scan_chain_antichain(lt, l.order, l.starts, s, r) == cy.scan_chain_antichain(lt, l.order, l.starts, s, r)
    args = (lt, l.level_array, l.order, l.starts, slc, k)
    assert py.scan_based11(*args) == cy.scan_based11(*args)
    assert py.scan_based21(*args) == cy.scan_based21(*args)


@needs_both
@given(posets(max_size=4), posets(max_size=7), st.integers(1, 3))
@settings(max_examples=200, deadline=None)
def test_oracle_backends_agree(pat, host, kind):
    args = (
        order_codes(pat), order_codes(host),
        LevelDecomposition.of(pat).level_array, LevelDecomposition.of(host).level_array, kind,
        pat.matrix.sum(0).astype(np.int64), pat.matrix.sum(1).astype(np.int64),
        host.matrix.sum(0).astype(np.int64), host.matrix.sum(1).astype(np.int64),
    )
    assert _backend.get_kernels("python").oracle_search(*args) == _backend.get_kernels("cython").oracle_search(*args)


def test_backend_selection():
    assert _backend.BACKEND in _backend.available_backends()
    assert _backend.get_kernels("python") is _pykernels
    with pytest.raises(ValueError):
        _backend.get_kernels("fortran")


def test_forced_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, POSETLEVELS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from posetlevels import _backend; print(_backend.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_empty_inputs(kernels):
    lt = np.zeros((0, 0), dtype=np.uint8)
    level, pred = kernels.level_sweep(lt)
    assert level.size == 0 and pred.size == 0
