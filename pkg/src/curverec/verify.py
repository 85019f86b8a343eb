"""Residual diagnostics and cross-route comparisons.

Everything here reduces to one shape: evaluate a deviation that should
vanish, report its max/rms/location against a tolerance
(``ResidualReport``), or rigidly align two curves and report the RMSD.
The checks cover: the unit-sphere constraint on tangent triples, the
fourth-order linear ODE satisfied by each Cartesian tangent component,
the second-order linear companion equation of the Riccati flow, the
determinant-one (Wronskian) conservation of fundamental matrices,
rigid Procrustes alignment, cylinder-axis normalization, and
convergence-order estimation from (step, error) ladders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInputError,
    GridError,
    GridMismatchError,
    InputError,
)
from .frenet import CurveSamples
from .intrinsic import ConstantProfile, HelixSpec, IntrinsicProfile, profile_arrays
from .riccati import FundamentalSamples

__all__ = [
    "ResidualReport",
    "AlignmentResult",
    "make_report",
    "sphere_residual",
    "fourth_order_residual",
    "linear_companion_residual",
    "wronskian_residual",
    "align_curves",
    "align_to_axis",
    "convergence_order",
]

#: CSV header for serialized residual reports
REPORT_CSV_HEADER = "name,max_abs,rms,argmax_s,tolerance,pass"


@dataclass(frozen=True)
class ResidualReport:
    """Summary of one residual check against its tolerance."""

    name: str
    max_abs: float
    rms: float
    argmax_s: float
    tolerance: float
    passed: bool

    def human_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{self.name:<28s} max={self.max_abs:<12.5g} rms={self.rms:<12.5g} "
            f"at s={self.argmax_s:<10.6g} tol={self.tolerance:<9.3g} {verdict}"
        )

    def csv_row(self) -> str:
        return (
            f"{self.name},{self.max_abs:.17g},{self.rms:.17g},"
            f"{self.argmax_s:.17g},{self.tolerance:.17g},"
            f"{'true' if self.passed else 'false'}"
        )


def make_report(
    name: str, s_values: np.ndarray, deviations: np.ndarray, tolerance: float
) -> ResidualReport:
    """Build a ResidualReport from per-sample absolute deviations."""
    deviations = np.abs(np.asarray(deviations))
    if deviations.size == 0:
        raise InputError("cannot report on an empty deviation sequence")
    if not tolerance > 0.0:
        raise InputError("tolerance must be positive")
    s_values = np.asarray(s_values, dtype=float)
    if s_values.shape != deviations.shape:
        raise InputError("s_values and deviations must have matching shapes")
    imax = int(np.argmax(deviations))
    max_abs = float(deviations[imax])
    rms = float(np.sqrt(np.mean(deviations * deviations)))
    return ResidualReport(
        name=name,
        max_abs=max_abs,
        rms=rms,
        argmax_s=float(s_values[imax]),
        tolerance=float(tolerance),
        passed=max_abs <= tolerance,
    )


def sphere_residual(
    vectors: np.ndarray,
    tolerance: float,
    s_values: np.ndarray | None = None,
    name: str = "sphere_sum",
) -> ResidualReport:
    """Deviation of v1^2 + v2^2 + v3^2 from 1 (complex-capable).

    For complex triples the deviation is the complex magnitude of the
    sum minus one, so the check covers both real unit vectors and the
    complexified identity satisfied by recovered tangent triples.
    """
    vectors = np.asarray(vectors)
    if vectors.ndim != 2 or vectors.shape[1] != 3 or vectors.shape[0] == 0:
        raise InputError("expected a non-empty (n, 3) array of vectors")
    total = (vectors * vectors).sum(axis=1)
    dev = np.abs(total - 1.0)
    if s_values is None:
        s_values = np.arange(len(dev), dtype=float)
    return make_report(name, s_values, dev, tolerance)


def _profile_derivatives(
    profile: IntrinsicProfile, s: np.ndarray, h: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """kappa, tau and their central-difference derivatives on the grid.

    Constant and helix profiles have analytically zero derivatives; for
    the others the first and second derivatives come from second-order
    central differences of the sampled values (endpoints by copy --
    callers only consume interior nodes, margin >= 4).
    """
    kappa, tau = profile_arrays(profile, s)
    if isinstance(profile, (ConstantProfile, HelixSpec)):
        zero = np.zeros_like(kappa)
        return kappa, tau, zero, zero.copy(), zero.copy()
    dk = np.empty_like(kappa)
    dk[1:-1] = (kappa[2:] - kappa[:-2]) / (2.0 * h)
    dk[0], dk[-1] = dk[1], dk[-2]
    ddk = np.empty_like(kappa)
    ddk[1:-1] = (kappa[2:] - 2.0 * kappa[1:-1] + kappa[:-2]) / (h * h)
    ddk[0], ddk[-1] = ddk[1], ddk[-2]
    dt = np.empty_like(tau)
    dt[1:-1] = (tau[2:] - tau[:-2]) / (2.0 * h)
    dt[0], dt[-1] = dt[1], dt[-2]
    return kappa, tau, dk, ddk, dt


def _check_uniform(s: np.ndarray) -> float:
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or len(s) < 2:
        raise GridError("need at least two samples")
    steps = np.diff(s)
    h = float(steps[0])
    if h <= 0.0 or np.abs(steps - h).max() > 1e-12 * max(abs(h), 1.0):
        raise GridError("samples must be uniformly spaced and increasing")
    return h


def fourth_order_residual(
    s: np.ndarray,
    component: np.ndarray,
    profile: IntrinsicProfile,
    tolerance: float,
    name: str = "fourth_order_ode",
) -> ResidualReport:
    """Residual of the fourth-order linear ODE for one sampled component.

    Each Cartesian position component x(s) of a curve with curvature
    kappa and torsion tau (both nonvanishing) satisfies

        x'''' - A x''' + B x'' + C x' = 0
        A = 2 kappa'/kappa + tau'/tau
        B = kappa^2 + tau^2 - (kappa kappa'' - 2 kappa'^2)/kappa^2
            + kappa' tau'/(kappa tau)
        C = kappa^2 (kappa'/kappa - tau'/tau)

    Tangent components satisfy the same equation only for constant
    kappa, tau (where A = C = 0 and the third-order tangent relation
    differentiates into this one); for varying profiles feed position
    components. Positions produced by the pairwise Simpson quadrature
    should be subsampled to the pair-end nodes (every other node): the
    interpolated midpoints carry an O(h^4) alternating error that the
    fourth-difference stencil amplifies to O(1).

    Derivatives are estimated with second-order central differences
    (five-point stencil for the fourth derivative), skipping four nodes
    at each boundary. The residual is normalized by the largest
    magnitude any of the four individual terms attains over the
    interior, making the number comparable across profiles.
    """
    component = np.asarray(component, dtype=float)
    s = np.asarray(s, dtype=float)
    if component.shape != s.shape:
        raise InputError("component and s must have matching shapes")
    if len(s) < 9:
        raise GridError("fourth-order residual needs at least 9 nodes")
    h = _check_uniform(s)

    kappa, tau, dk, ddk, dt = _profile_derivatives(profile, s, h)
    lo, hi = 4, len(s) - 4  # interior nodes with full stencil support
    kin, tin = kappa[lo:hi], tau[lo:hi]
    if np.abs(kin).min() <= 1e-8 or np.abs(tin).min() <= 1e-8:
        raise InputError(
            "curvature and torsion must stay above 1e-8 in magnitude "
            "for the fourth-order residual"
        )

    x = component
    d1 = (x[lo + 1:hi + 1] - x[lo - 1:hi - 1]) / (2.0 * h)
    d2 = (x[lo + 1:hi + 1] - 2.0 * x[lo:hi] + x[lo - 1:hi - 1]) / (h * h)
    d3 = (
        x[lo + 2:hi + 2] - 2.0 * x[lo + 1:hi + 1]
        + 2.0 * x[lo - 1:hi - 1] - x[lo - 2:hi - 2]
    ) / (2.0 * h ** 3)
    d4 = (
        x[lo + 2:hi + 2] - 4.0 * x[lo + 1:hi + 1] + 6.0 * x[lo:hi]
        - 4.0 * x[lo - 1:hi - 1] + x[lo - 2:hi - 2]
    ) / h ** 4

    dk_in, ddk_in, dt_in = dk[lo:hi], ddk[lo:hi], dt[lo:hi]
    coef_a = 2.0 * dk_in / kin + dt_in / tin
    coef_b = (
        kin * kin + tin * tin
        - (kin * ddk_in - 2.0 * dk_in * dk_in) / (kin * kin)
        + dk_in * dt_in / (kin * tin)
    )
    coef_c = kin * kin * (dk_in / kin - dt_in / tin)

    terms = np.stack([d4, -coef_a * d3, coef_b * d2, coef_c * d1])
    scale = max(float(np.abs(terms).max()), 1e-300)
    # Rounding floor of the stencils themselves (sum of |stencil weights|
    # per derivative, times eps and the data magnitude). When every term
    # sits below it, the samples are indistinguishable from an exact
    # solution at this precision -- e.g. any constant sequence -- and the
    # residual is reported as zero rather than noise divided by noise.
    eps = float(np.finfo(float).eps)
    magnitude = float(np.abs(x).max())
    floor = eps * magnitude * (
        16.0 / h**4
        + 3.0 * float(np.abs(coef_a).max()) / h**3
        + 4.0 * float(np.abs(coef_b).max()) / h**2
        + float(np.abs(coef_c).max()) / h
    )
    if scale <= floor:
        residual = np.zeros(hi - lo)
    else:
        residual = np.abs(terms.sum(axis=0)) / scale
    return make_report(name, s[lo:hi], residual, tolerance)


def linear_companion_residual(
    kappa: float,
    tau: float,
    s: np.ndarray,
    u_values: np.ndarray,
    tolerance: float,
    name: str = "linear_companion",
) -> ResidualReport:
    """Residual of u'' + i kappa u' + (tau^2/4) u = 0 for constant kappa, tau.

    This is the second-order linear equation whose logarithmic
    derivative reproduces the Riccati flow; the relation only holds for
    constant torsion, so constant coefficients are required here.
    Central differences on interior nodes; needs at least 5 nodes.
    """
    s = np.asarray(s, dtype=float)
    u = np.asarray(u_values, dtype=complex)
    if u.shape != s.shape:
        raise InputError("u_values and s must have matching shapes")
    if len(s) < 5:
        raise GridError("companion residual needs at least 5 nodes")
    h = _check_uniform(s)
    d1 = (u[2:] - u[:-2]) / (2.0 * h)
    d2 = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    res = np.abs(d2 + 1j * float(kappa) * d1 + 0.25 * float(tau) ** 2 * u[1:-1])
    return make_report(name, s[1:-1], res, tolerance)


def wronskian_residual(
    samples: FundamentalSamples, tolerance: float = 1e-9, name: str = "wronskian"
) -> ResidualReport:
    """Deviation of the fundamental-matrix determinant from one."""
    dev = np.abs(samples.determinants() - 1.0)
    return make_report(name, samples.s, dev, tolerance)


# --- rigid alignment -----------------------------------------------------------

@dataclass(frozen=True)
class AlignmentResult:
    """Proper rigid motion mapping a candidate curve onto a reference."""

    rotation: np.ndarray
    translation: np.ndarray
    rmsd: float
    degenerate: bool

    def apply(self, positions: np.ndarray) -> np.ndarray:
        return positions @ self.rotation.T + self.translation


def align_curves(reference: CurveSamples, candidate: CurveSamples) -> AlignmentResult:
    """Least-squares proper rigid alignment of candidate onto reference.

    Orthogonal Procrustes on centered point sets with the reflection
    corrected away (the rotation determinant is forced to +1). Curves
    must share the same arc-length grid. Collinear point sets are
    flagged degenerate but still solved; the rotation about the common
    line is gauge and resolved deterministically by the SVD.
    """
    s_ref = np.asarray(reference.s, dtype=float)
    s_cand = np.asarray(candidate.s, dtype=float)
    if s_ref.shape != s_cand.shape or np.abs(s_ref - s_cand).max() > 1e-12 * max(
        1.0, float(np.abs(s_ref).max())
    ):
        raise GridMismatchError("curves must share an identical arc-length grid")
    ref = np.asarray(reference.positions, dtype=float)
    cand = np.asarray(candidate.positions, dtype=float)

    ref_mean = ref.mean(axis=0)
    cand_mean = cand.mean(axis=0)
    cross = (cand - cand_mean).T @ (ref - ref_mean)
    u, sing, vt = np.linalg.svd(cross)
    sign = float(np.sign(np.linalg.det(vt.T @ u.T)))
    if sign == 0.0:
        sign = 1.0
    rotation = vt.T @ np.diag([1.0, 1.0, sign]) @ u.T
    translation = ref_mean - rotation @ cand_mean
    moved = cand @ rotation.T + translation
    rmsd = float(np.sqrt(np.mean(((moved - ref) ** 2).sum(axis=1))))
    degenerate = bool(sing[-1] <= 1e-12 * max(sing[0], 1e-300))
    return AlignmentResult(rotation, translation, rmsd, degenerate)


def _rotation_to_z(axis: np.ndarray) -> np.ndarray:
    """Minimal proper rotation taking the given unit vector to (0, 0, 1)."""
    z = np.array([0.0, 0.0, 1.0])
    cos_angle = float(axis @ z)
    if cos_angle < -1.0 + 1e-12:
        return np.diag([1.0, -1.0, -1.0])  # half-turn about x
    v = np.cross(axis, z)
    vx = np.array(
        [[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]]
    )
    return np.eye(3) + vx + vx @ vx / (1.0 + cos_angle)


def align_to_axis(curve: CurveSamples) -> CurveSamples:
    """Rotate/translate a cylindrical curve into the z-axis frame.

    The cylinder axis is estimated as the direction of least variance
    of the chord tangents (smallest principal component), oriented
    along the mean tangent so the curve advances in +z; the curve is
    rotated to put that axis on (0, 0, 1) and translated in the plane
    so the least-squares circle center of the projected points sits at
    the origin. Idempotent on already-aligned curves. Straight lines
    (no tangent variance) are rejected as degenerate.
    """
    positions = np.asarray(curve.positions, dtype=float)
    s = np.asarray(curve.s, dtype=float)
    if len(s) < 8:
        raise InputError("axis alignment needs at least 8 samples")
    chords = np.diff(positions, axis=0) / np.diff(s)[:, None]
    mean = chords.mean(axis=0)
    centered = chords - mean
    cov = centered.T @ centered / len(chords)
    if float(np.trace(cov)) <= 1e-16:
        raise DegenerateInputError(
            "tangent direction is constant; no cylinder axis to align"
        )
    eigvals, eigvecs = np.linalg.eigh(cov)
    axis = eigvecs[:, 0]  # least-variance direction
    along = float(mean @ axis)
    if abs(along) > 1e-12:
        axis = axis if along > 0.0 else -axis
    else:
        # closed curves have near-zero mean tangent; fix the sign by the
        # largest-magnitude component for determinism
        lead = int(np.argmax(np.abs(axis)))
        axis = axis if axis[lead] > 0.0 else -axis

    rotation = _rotation_to_z(axis)
    rotated = positions @ rotation.T

    # least-squares circle (linear in center coordinates) on the projection
    x, y = rotated[:, 0], rotated[:, 1]
    design = np.column_stack([x, y, np.ones_like(x)])
    rhs = x * x + y * y
    coef, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    center = np.array([0.5 * coef[0], 0.5 * coef[1], 0.0])
    return CurveSamples(s, rotated - center)


def convergence_order(pairs) -> float:
    """Least-squares slope of log(error) against log(step).

    ``pairs`` is a sequence of (h, error) with h strictly decreasing and
    errors positive; the returned slope is the measured order.
    """
    pairs = [(float(h), float(e)) for h, e in pairs]
    if len(pairs) < 3:
        raise InputError("need at least 3 (step, error) pairs")
    hs = np.array([p[0] for p in pairs])
    errs = np.array([p[1] for p in pairs])
    if not np.all(np.diff(hs) < 0.0):
        raise InputError("steps must be strictly decreasing")
    if not np.all(errs > 0.0):
        raise InputError("errors must be positive")
    slope, _ = np.polyfit(np.log(hs), np.log(errs), 1)
    return float(slope)
