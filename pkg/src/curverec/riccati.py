"""Stereographic route: Riccati equation, 2x2 linearization, and curve rebuild.

For a unit vector ``v = (v1, v2, v3)`` built from one Cartesian
component of each frame vector (tangent, normal, binormal), the
stereographic images

    w = (v1 + i v2) / (1 - v3)        z = -(1 - v3) / (v1 - i v2)

both satisfy the same Riccati equation along the curve,

    w' = -i kappa w + (i/2) sigma tau w^2 - (i/2) sigma tau ,

with ``sigma = +1`` (projection from the north pole) or ``sigma = -1``
(the mirrored variant, equivalent to flipping the torsion sign). The
Riccati flow is the Moebius action of a trace-free 2x2 linear system,
which is what actually gets integrated: no poles, unitary for real
input, determinant pinned to one. Tangent components are recovered from
the fundamental matrix by determinant-normalized quadratic forms
(Scheffers' formulas) and integrated into positions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    CoincidentSolutionsError,
    InputError,
    IntegrationDriftError,
    PoleError,
    SingularMatrixError,
)
from .frenet import CurveSamples, integrate_tangent
from .intrinsic import ArcLengthGrid, IntrinsicProfile, profile_arrays

__all__ = [
    "SignVariant",
    "MobiusPair",
    "FundamentalMatrix",
    "FundamentalSamples",
    "INFINITY",
    "wz_from_frame",
    "frame_from_wz",
    "riccati_rhs",
    "generator",
    "linear_rhs",
    "integrate_fundamental",
    "mobius_eval",
    "scheffers_tangent",
    "tangent_components",
    "reconstruct_curve",
    "riccati_from_linear_u",
]

#: marker for the point at infinity of the extended complex plane
INFINITY = object()

_POLE_TOL = 1e-12


class SignVariant(enum.Enum):
    """Torsion sign variant of the stereographic construction."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sigma(self) -> float:
        return 1.0 if self is SignVariant.PLUS else -1.0


@dataclass(frozen=True)
class MobiusPair:
    """The stereographic solution pair ``(w, z)`` for one component triple.

    For a pair coming from a real unit vector, ``w * conj(z) == -1``
    exactly and ``w != z`` always.
    """

    w: complex
    z: complex

    def conjugacy_residual(self) -> float:
        return abs(self.w * self.z.conjugate() + 1.0)


@dataclass(frozen=True)
class FundamentalMatrix:
    """2x2 complex matrix ``[[f1, f2], [f3, f4]]`` with determinant one."""

    f1: complex
    f2: complex
    f3: complex
    f4: complex

    @classmethod
    def identity(cls) -> "FundamentalMatrix":
        return cls(1.0 + 0.0j, 0.0j, 0.0j, 1.0 + 0.0j)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "FundamentalMatrix":
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]),
                   complex(m[1, 0]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.f1, self.f2], [self.f3, self.f4]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.f1 * self.f4 - self.f2 * self.f3

    def unitarity_residual(self) -> float:
        m = self.matrix
        return float(np.abs(m @ m.conj().T - np.eye(2)).max())


class FundamentalSamples:
    """Fundamental matrices along a grid; indexable as (s, FundamentalMatrix)."""

    def __init__(self, s: np.ndarray, matrices: np.ndarray, variant: SignVariant):
        self.s = np.asarray(s, dtype=float)
        self.matrices = np.asarray(matrices, dtype=complex)
        self.variant = variant
        if self.matrices.shape != (len(self.s), 2, 2):
            raise InputError("matrices must have shape (len(s), 2, 2)")

    def __len__(self) -> int:
        return len(self.s)

    def __getitem__(self, i: int) -> tuple[float, FundamentalMatrix]:
        return float(self.s[i]), FundamentalMatrix.from_matrix(self.matrices[i])

    def determinants(self) -> np.ndarray:
        m = self.matrices
        return m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]


# --- stereographic maps -------------------------------------------------------

def wz_from_frame(v: np.ndarray) -> MobiusPair:
    """Stereographic pair of a real unit 3-vector (component triple).

    Raises PoleError when ``v`` is too close to the projection pole
    ``(0, 0, 1)``; the projective route exists precisely so production
    code never needs this map near the pole.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise InputError("expected a 3-vector")
    if abs(v @ v - 1.0) > 1e-9:
        raise InputError("expected a unit vector (|v|^2 - 1| <= 1e-9)")
    den = 1.0 - v[2]
    if abs(den) <= _POLE_TOL:
        raise PoleError("stereographic pole: component triple has v3 ~ 1")
    w = complex(v[0], v[1]) / den
    z = -den / complex(v[0], -v[1])
    return MobiusPair(w, z)


def frame_from_wz(pair: MobiusPair) -> np.ndarray:
    """Invert the stereographic pair back to a (complex) component triple.

    For exactly conjugate pairs the result is real up to rounding; the
    complex values are returned so identity checks can quantify the
    imaginary residue. Raises CoincidentSolutionsError when ``w == z``.
    """
    w, z = pair.w, pair.z
    diff = w - z
    if abs(diff) <= _POLE_TOL:
        raise CoincidentSolutionsError("w and z coincide; frame map is singular")
    v1 = (1.0 - w * z) / diff
    v2 = 1.0j * (1.0 + w * z) / diff
    v3 = (w + z) / diff
    return np.array([v1, v2, v3], dtype=complex)


# --- Riccati equation and its 2x2 linearization -------------------------------

def riccati_rhs(w: complex, kappa: float, tau: float, variant: SignVariant) -> complex:
    """Right-hand side of the stereographic Riccati equation."""
    st = variant.sigma * tau
    return -1.0j * kappa * w + 0.5j * st * (w * w) - 0.5j * st


def generator(kappa: float, tau: float, variant: SignVariant) -> np.ndarray:
    """Trace-free 2x2 generator whose Moebius action is the Riccati flow."""
    p = -0.5j * kappa
    q = -0.5j * variant.sigma * tau
    return np.array([[p, q], [q, -p]], dtype=complex)


def linear_rhs(
    m: FundamentalMatrix, kappa: float, tau: float, variant: SignVariant
) -> np.ndarray:
    """Derivative of the fundamental matrix: generator times matrix."""
    return generator(kappa, tau, variant) @ m.matrix


def integrate_fundamental(
    profile: IntrinsicProfile, grid: ArcLengthGrid, variant: SignVariant
) -> FundamentalSamples:
    """RK4 integration of the 2x2 linear system from the identity matrix.

    The identity start encodes the canonical initial frame (tangent
    x-hat, normal y-hat, binormal z-hat). Every step ends with a
    re-unitarization that pins the determinant to one, so the samples
    stay on the group for arbitrarily long spans.
    """
    kn, tn = profile_arrays(profile, grid.nodes())
    km, tm = profile_arrays(profile, grid.mids())
    mats = kernels.fundamental_rk4(
        np.ascontiguousarray(kn),
        np.ascontiguousarray(tn),
        np.ascontiguousarray(km),
        np.ascontiguousarray(tm),
        grid.h,
        variant.sigma,
    )
    return FundamentalSamples(grid.nodes(), mats, variant)


def mobius_eval(m: FundamentalMatrix, c) -> complex:
    """Moebius action ``(c f1 + f2) / (c f3 + f4)``; ``c`` may be INFINITY.

    Raises PoleError when the denominator vanishes (the image would be
    the point at infinity).
    """
    if c is INFINITY:
        if abs(m.f3) <= _POLE_TOL:
            raise PoleError("Moebius image of infinity is infinity (f3 ~ 0)")
        return m.f1 / m.f3
    c = complex(c)
    den = c * m.f3 + m.f4
    if abs(den) <= _POLE_TOL:
        raise PoleError(f"Moebius denominator vanishes at c={c}")
    return (c * m.f1 + m.f2) / den


# --- tangent recovery ---------------------------------------------------------

def scheffers_tangent(m: FundamentalMatrix) -> np.ndarray:
    """Tangent component triple from a determinant-one fundamental matrix.

    Determinant-normalized quadratic forms in the matrix entries; exact
    unit-sphere sum for any invertible matrix, real for unitary ones.
    Raises SingularMatrixError when the determinant is too close to zero.
    """
    f1, f2, f3, f4 = m.f1, m.f2, m.f3, m.f4
    det = f1 * f4 - f2 * f3
    if abs(det) <= _POLE_TOL:
        raise SingularMatrixError("fundamental matrix is singular")
    aa = f1 * f1 - f3 * f3
    bb = f2 * f2 - f4 * f4
    alpha1 = (aa - bb) / (2.0 * det)
    alpha2 = 1.0j * (aa + bb) / (2.0 * det)
    alpha3 = (f3 * f4 - f1 * f2) / det
    return np.array([alpha1, alpha2, alpha3], dtype=complex)


def _scheffers_array(mats: np.ndarray) -> np.ndarray:
    """Vectorized tangent triples for a stack of 2x2 matrices."""
    f1 = mats[:, 0, 0]
    f2 = mats[:, 0, 1]
    f3 = mats[:, 1, 0]
    f4 = mats[:, 1, 1]
    det = f1 * f4 - f2 * f3
    if np.abs(det).min() <= _POLE_TOL:
        raise SingularMatrixError("singular fundamental matrix in sequence")
    aa = f1 * f1 - f3 * f3
    bb = f2 * f2 - f4 * f4
    out = np.empty((mats.shape[0], 3), dtype=complex)
    out[:, 0] = (aa - bb) / (2.0 * det)
    out[:, 1] = 1.0j * (aa + bb) / (2.0 * det)
    out[:, 2] = (f3 * f4 - f1 * f2) / det
    return out


def tangent_components(samples: FundamentalSamples) -> np.ndarray:
    """Complex tangent triples along the integration, variant-consistently.

    The minus variant projects from the opposite pole, which swaps the
    constant pair describing the third component triple; recovering the
    tangent therefore negates the third quadratic form. With that
    correction both variants reconstruct the same tangent field exactly
    (the two identity-initialized fundamental systems are conjugate by
    diag(1, -1)).
    """
    tang = _scheffers_array(samples.matrices)
    if samples.variant is SignVariant.MINUS:
        tang[:, 2] = -tang[:, 2]
    return tang


def reconstruct_curve(
    profile: IntrinsicProfile,
    grid: ArcLengthGrid,
    variant: SignVariant = SignVariant.PLUS,
    start=(0.0, 0.0, 0.0),
    imag_tol: float = 1e-8,
) -> CurveSamples:
    """Rebuild the curve from its intrinsic profile via the 2x2 linear route.

    Pipeline: integrate the fundamental matrix, recover tangent triples,
    take real parts (raising IntegrationDriftError if any imaginary
    residue exceeds ``imag_tol``), and Simpson-integrate from ``start``.
    """
    samples = integrate_fundamental(profile, grid, variant)
    tang = tangent_components(samples)
    drift = float(np.abs(tang.imag).max())
    if drift > imag_tol:
        raise IntegrationDriftError(
            f"imaginary residue {drift:.3e} exceeds {imag_tol:.3e}; "
            "integrator drift or non-real profile"
        )
    return integrate_tangent(samples.s, tang.real, np.asarray(start, dtype=float))


# --- link to the second-order linear form --------------------------------------

def riccati_from_linear_u(
    u: complex, u_prime: complex, tau: float, variant: SignVariant
) -> complex:
    """Map a solution of ``u'' + i kappa u' + (tau^2/4) u = 0`` to Riccati ``w``.

    The substitution is the logarithmic derivative ``w = -(2/(i tau)) u'/u``
    for the plus variant and its negative for the minus variant; valid
    for constant profiles with ``tau != 0`` and ``u != 0``.
    """
    if tau == 0.0:
        raise InputError("tau must be nonzero for the logarithmic-derivative map")
    if u == 0:
        raise InputError("u must be nonzero")
    w = -(2.0 / (1.0j * tau)) * (complex(u_prime) / complex(u))
    return w if variant is SignVariant.PLUS else -w
