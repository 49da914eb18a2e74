from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from partlogic import _kernels_py, kernels


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    env.pop("PARTLOGIC_PURE_PYTHON", None)
    if env_value is not None:
        env["PARTLOGIC_PURE_PYTHON"] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "from partlogic import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    return out.stdout.strip()


def test_env_var_forces_fallback():
    assert _backend_in_subprocess("1") == "python"


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
def test_extension_preferred():
    assert _backend_in_subprocess(None) == "cython"


def test_rgs_array_shape_and_order():
    a = _kernels_py.rgs_array(4)
    assert a.shape == (15, 4)
    rows = [tuple(r) for r in a.tolist()]
    assert rows == sorted(rows)
    assert rows[0] == (0, 0, 0, 0) and rows[-1] == (0, 1, 2, 3)
    assert _kernels_py.rgs_array(0).shape == (1, 0)


def test_refinement_matrix_diagonal_and_extremes():
    for mod in kernels.available_backends().values():
        rgs = mod.rgs_array(4)
        r = mod.refinement_matrix(rgs)
        assert r.dtype == bool
        assert r.diagonal().all()
        # the bottom (row 0) is refined by everything; the top refines only itself
        assert r[0].all()
        assert r[:, -1].all() and r[-1].sum() == 1


@pytest.mark.parametrize("n", range(0, 7))
def test_backends_identical(n):
    mods = list(kernels.available_backends().values())
    base = mods[0].rgs_array(n)
    for m in mods[1:]:
        np.testing.assert_array_equal(m.rgs_array(n), base)
        np.testing.assert_array_equal(m.refinement_matrix(base), mods[0].refinement_matrix(base))
