"""Direct route: Frenet-Serret frame integration and tangent quadrature.

The frame system is, with primes denoting arc-length derivatives,

    tangent'  =  kappa * normal
    normal'   = -kappa * tangent + tau * binormal
    binormal' = -tau * normal

integrated by classical fixed-step RK4 with per-step modified
Gram-Schmidt re-orthonormalization. Positions then come from the unit
tangent by cumulative composite Simpson quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GridError, InputError, NonOrthonormalFrameError
from .intrinsic import ArcLengthGrid, IntrinsicProfile, profile_arrays

__all__ = [
    "FrameSample",
    "FrameSamples",
    "CurveSamples",
    "identity_frame",
    "frame_residual",
    "fs_rhs",
    "integrate_fs",
    "integrate_tangent",
]


@dataclass(frozen=True)
class FrameSample:
    """Orthonormal right-handed frame at one arc length."""

    s: float
    tangent: np.ndarray
    normal: np.ndarray
    binormal: np.ndarray


def identity_frame() -> np.ndarray:
    """Canonical start frame: tangent x-hat, normal y-hat, binormal z-hat."""
    return np.eye(3)


def frame_residual(frame: np.ndarray) -> float:
    """Max deviation from unit norms, orthogonality, and right-handedness.

    ``frame`` is 3x3 with rows (tangent, normal, binormal); the residual
    is ``max(|F F^T - I|, |det F - 1|)``.
    """
    f = np.asarray(frame, dtype=float)
    gram = f @ f.T - np.eye(3)
    return float(max(np.abs(gram).max(), abs(np.linalg.det(f) - 1.0)))


class FrameSamples:
    """Frames along a grid; indexable as a sequence of FrameSample."""

    def __init__(self, s: np.ndarray, frames: np.ndarray):
        self.s = np.asarray(s, dtype=float)
        self.frames = np.asarray(frames, dtype=float)
        if self.frames.shape != (len(self.s), 3, 3):
            raise InputError("frames must have shape (len(s), 3, 3)")

    @property
    def tangents(self) -> np.ndarray:
        return self.frames[:, 0, :]

    @property
    def normals(self) -> np.ndarray:
        return self.frames[:, 1, :]

    @property
    def binormals(self) -> np.ndarray:
        return self.frames[:, 2, :]

    def __len__(self) -> int:
        return len(self.s)

    def __getitem__(self, i: int) -> FrameSample:
        return FrameSample(
            float(self.s[i]),
            self.frames[i, 0].copy(),
            self.frames[i, 1].copy(),
            self.frames[i, 2].copy(),
        )

    def max_frame_residual(self) -> float:
        gram = self.frames @ np.transpose(self.frames, (0, 2, 1)) - np.eye(3)
        dets = np.linalg.det(self.frames)
        return float(max(np.abs(gram).max(), np.abs(dets - 1.0).max()))


@dataclass(frozen=True)
class CurveSamples:
    """Positions along a strictly increasing arc-length grid."""

    s: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        pos = np.asarray(self.positions, dtype=float)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "positions", pos)
        if pos.shape != (len(s), 3):
            raise InputError("positions must have shape (len(s), 3)")
        if len(s) < 2 or not np.all(np.diff(s) > 0.0):
            raise InputError("s must be strictly increasing with >= 2 samples")

    def __len__(self) -> int:
        return len(self.s)


def fs_rhs(
    frame: FrameSample | np.ndarray, kappa: float, tau: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Frame derivative under the Frenet-Serret system."""
    if isinstance(frame, FrameSample):
        t, n, b = frame.tangent, frame.normal, frame.binormal
    else:
        f = np.asarray(frame, dtype=float)
        t, n, b = f[0], f[1], f[2]
    return kappa * n, -kappa * t + tau * b, -tau * n


def integrate_fs(
    profile: IntrinsicProfile,
    grid: ArcLengthGrid,
    initial: np.ndarray | None = None,
    tol: float = 1e-9,
) -> FrameSamples:
    """Integrate the frame system over the grid.

    ``initial`` is a 3x3 frame with rows (tangent, normal, binormal),
    identity by default; it must be orthonormal and right-handed within
    ``tol``.
    """
    frame0 = identity_frame() if initial is None else np.array(initial, dtype=float)
    if frame0.shape != (3, 3):
        raise NonOrthonormalFrameError("initial frame must be 3x3")
    if frame_residual(frame0) > tol:
        raise NonOrthonormalFrameError(
            f"initial frame is not orthonormal/right-handed within {tol}"
        )
    kn, tn = profile_arrays(profile, grid.nodes())
    km, tm = profile_arrays(profile, grid.mids())
    frames = kernels.frame_rk4(
        np.ascontiguousarray(kn),
        np.ascontiguousarray(tn),
        np.ascontiguousarray(km),
        np.ascontiguousarray(tm),
        grid.h,
        np.ascontiguousarray(frame0),
    )
    return FrameSamples(grid.nodes(), frames)


def integrate_tangent(
    s: np.ndarray, tangents: np.ndarray, start: np.ndarray
) -> CurveSamples:
    """Cumulative composite Simpson quadrature of tangent samples.

    Works on interval pairs: the far node of each pair receives the
    Simpson increment, the midpoint node a fourth-order half-pair
    increment ``h/12 * (5 f0 + 8 f1 - f2)``. Requires a uniform grid
    (relative spacing jitter <= 1e-12) with an even interval count.
    """
    s = np.asarray(s, dtype=float)
    vecs = np.asarray(tangents, dtype=float)
    if vecs.shape != (len(s), 3):
        raise InputError("tangents must have shape (len(s), 3)")
    n = len(s) - 1
    if n < 2 or n % 2 != 0:
        raise GridError(f"interval count must be even and >= 2, got {n}")
    steps = np.diff(s)
    h = (s[-1] - s[0]) / n
    if np.abs(steps - h).max() > 1e-12 * max(abs(h), 1.0):
        raise GridError("grid spacing is not uniform within 1e-12 relative")

    out = np.empty_like(vecs)
    out[0] = np.asarray(start, dtype=float)
    f0 = vecs[0:-1:2]  # pair starts
    f1 = vecs[1::2]  # pair midpoints
    f2 = vecs[2::2]  # pair ends
    pair_inc = (h / 3.0) * (f0 + 4.0 * f1 + f2)
    out[2::2] = out[0] + np.cumsum(pair_inc, axis=0)
    half_inc = (h / 12.0) * (5.0 * f0 + 8.0 * f1 - f2)
    out[1::2] = out[0:-1:2] + half_inc
    return CurveSamples(s, out)
