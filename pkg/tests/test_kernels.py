"""Backend parity tests: the compiled and pure kernels must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from curverec import kernels
from curverec.kernels import available_backends


def _profile_arrays(n):
    rng = np.random.default_rng(97)
    s_nodes = np.linspace(0.0, 5.0, n + 1)
    s_mids = 0.5 * (s_nodes[:-1] + s_nodes[1:])

    def kappa(s):
        return 1.0 + 0.3 * np.sin(1.7 * s)

    def tau(s):
        return 0.4 + 0.2 * np.cos(0.9 * s)

    h = s_nodes[1] - s_nodes[0]
    return (
        kappa(s_nodes), tau(s_nodes), kappa(s_mids), tau(s_mids), h, rng
    )


class TestBackendSelection:
    def test_backend_name_is_known(self):
        assert kernels.BACKEND in ("pure", "compiled")

    def test_pure_always_available(self):
        assert "pure" in available_backends()

    def test_pure_env_var_forces_fallback(self):
        code = "import curverec.kernels as k; print(k.BACKEND)"
        env = dict(os.environ, CURVEREC_PURE="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == "pure"


@pytest.mark.skipif(
    "compiled" not in available_backends(),
    reason="compiled kernel extension not built",
)
class TestBackendParity:
    def test_frame_rk4_matches(self):
        kn, tn, km, tm, h, _ = _profile_arrays(400)
        frame0 = np.eye(3)
        args = (kn, tn, km, tm, h, frame0)
        pure = available_backends()["pure"].frame_rk4(*args)
        compiled = available_backends()["compiled"].frame_rk4(*args)
        assert np.abs(pure - compiled).max() <= 1e-12

    def test_fundamental_rk4_matches(self):
        kn, tn, km, tm, h, _ = _profile_arrays(400)
        for sigma in (1.0, -1.0):
            pure = available_backends()["pure"].fundamental_rk4(
                kn, tn, km, tm, h, sigma
            )
            compiled = available_backends()["compiled"].fundamental_rk4(
                kn, tn, km, tm, h, sigma
            )
            assert np.abs(pure - compiled).max() <= 1e-12

    def test_module_level_dispatch_consistent(self):
        # Whatever backend is active, the dispatched names point into it.
        impl = available_backends()[kernels.BACKEND]
        assert kernels.frame_rk4 is impl.frame_rk4
        assert kernels.fundamental_rk4 is impl.fundamental_rk4
