"""Closed-form machinery for circular helices (curves of constant slope).

When the slope ratio ``xi = kappa/tau = a/b`` is constant, the
stereographic Riccati equation separates and everything is explicit:

* the flow has two real fixed points ``w1 = xi + sqrt(xi^2+1)`` and
  ``w2 = xi - sqrt(xi^2+1)`` (roots of ``w^2 - 2 xi w - 1``);
* the general solution is a Moebius mix of the fixed points driven by
  the accumulated torsion;
* tangent and curve admit closed forms in a scaled trigonometric pair
  ``scaled_sin/scaled_cos`` whose squares sum to the constant
  ``ck = (w1^2-1)/(w2^2-1) = (a+c)/(a-c)`` instead of one;
* for the constant-coefficient profile the fundamental matrix is a
  2x2 rotation-like exponential, evaluated here exactly.

The explicit tangent / curve formulas are complex-valued (they come
from one separable solution, not the identity-initialized unitary
flow); their defining identities hold in the complexified sense. The
real reference curve for oracle comparisons, ``real_helix_oracle``,
instead pushes the exact unitary matrices through the standard
reconstruction pipeline, so its only error is quadrature rounding.

Throughout, the constant torsion is tied to the geometry as
``tau = b/c^2`` with ``c = sqrt(a^2+b^2)``, giving curvature
``kappa = a/c^2``, frequency ``omega = 1/c``, cylinder radius ``a``
and pitch advance ``b/c`` per unit arc length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, PoleError
from .frenet import CurveSamples, integrate_tangent
from .intrinsic import ArcLengthGrid
from .riccati import (
    FundamentalMatrix,
    FundamentalSamples,
    SignVariant,
    tangent_components,
)

__all__ = [
    "HelixDerived",
    "helix_derived",
    "scaled_sin",
    "scaled_cos",
    "helix_w_solution",
    "closed_form_tangent",
    "closed_form_curve",
    "fundamental_closed_form",
    "fundamental_closed_form_samples",
    "separable_fundamental",
    "real_helix_oracle",
]


@dataclass(frozen=True)
class HelixDerived:
    """Derived constants of a circular helix with radius a and pitch slope b.

    Invariants: ``w1*w2 == -1`` and ``w1 + w2 == 2*xi`` (Vieta),
    ``ck == (a+c)/(a-c) == (w1**2-1)/(w2**2-1) < 0``.
    """

    a: float
    b: float
    c: float
    xi: float
    w1: float
    w2: float
    ck: float

    @property
    def kappa(self) -> float:
        return self.a / (self.c * self.c)

    @property
    def tau(self) -> float:
        return self.b / (self.c * self.c)

    @property
    def omega(self) -> float:
        """Frame rotation rate sqrt(kappa^2 + tau^2) = 1/c."""
        return 1.0 / self.c


def helix_derived(a: float, b: float) -> HelixDerived:
    """Compute all derived helix constants from the radius/pitch pair."""
    a = float(a)
    b = float(b)
    if not (a > 0.0 and np.isfinite(a)):
        raise InputError("helix parameter a must be positive and finite")
    if not (b > 0.0 and np.isfinite(b)):
        raise InputError("helix parameter b must be positive and finite")
    c = float(np.hypot(a, b))
    xi = a / b
    root = float(np.sqrt(xi * xi + 1.0))
    w1 = xi + root
    w2 = xi - root
    ck = (a + c) / (a - c)
    return HelixDerived(a=a, b=b, c=c, xi=xi, w1=w1, w2=w2, ck=ck)


def scaled_sin(theta, ck):
    """Sine-like combination (e^{i theta} - ck e^{-i theta}) / (2i).

    Together with scaled_cos it satisfies
    ``scaled_sin(t)^2 + scaled_cos(t)^2 == ck`` for every t, and reduces
    to the classical sine at ck = 1. Accepts scalars or arrays.
    """
    e = np.exp(1j * np.asarray(theta))
    return (e - ck / e) / 2j


def scaled_cos(theta, ck):
    """Cosine-like combination (e^{i theta} + ck e^{-i theta}) / 2."""
    e = np.exp(1j * np.asarray(theta))
    return (e + ck / e) / 2.0


def helix_w_solution(derived: HelixDerived, mix: complex, torsion_integral: float) -> complex:
    """General separable Riccati solution for the plus variant.

    ``mix`` is the integration constant blending the two fixed points:
    mix = 0 pins the solution at w1; |mix| -> infinity approaches w2.
    ``torsion_integral`` is the accumulated torsion up to the evaluation
    point; the solution depends on arc length only through it.
    """
    theta = (derived.c / derived.b) * float(torsion_integral)
    phase = np.exp(1j * theta)
    mix = complex(mix)
    den = mix * phase - 1.0
    if abs(den) <= 1e-300:
        raise PoleError("separable Riccati solution passes through infinity here")
    return complex((mix * derived.w2 * phase - derived.w1) / den)


def _theta(derived: HelixDerived, s) -> np.ndarray:
    """Phase angle at arc length s for the canonical torsion tau = b/c^2."""
    return np.asarray(s, dtype=float) / derived.c


def closed_form_tangent(derived: HelixDerived, s):
    """Explicit (complex) tangent triple of the separable solution.

    Components: ``i (a/(b c)) (a-c) * scaled_sin(s/c)`` and the same
    prefactor times ``scaled_cos(s/c)``, with constant third component
    ``-b/c``. Their squares sum to exactly 1 in the complexified sense
    because ``(a-c)^2 ck = a^2 - c^2 = -b^2``. Scalar s gives a
    3-vector; an array of shape (n,) gives an (n, 3) array.
    """
    th = _theta(derived, s)
    pref = 1j * (derived.a / (derived.b * derived.c)) * (derived.a - derived.c)
    comp1 = pref * scaled_sin(th, derived.ck)
    comp2 = pref * scaled_cos(th, derived.ck)
    comp3 = np.broadcast_to(-derived.b / derived.c + 0j, th.shape)
    return np.stack([comp1, comp2, np.asarray(comp3)], axis=-1)


def closed_form_curve(derived: HelixDerived, s):
    """Explicit (complex) curve of the separable solution.

    Antiderivative of closed_form_tangent with additive constants
    dropped:

        x = -i (a/b) (a-c) scaled_cos(s/c)
        y = +i (a/b) (a-c) scaled_sin(s/c)
        z = -b s / c

    satisfying ``x^2 + y^2 == a^2`` identically (complexified). The
    sign of y is fixed by dy/ds = second tangent component; the
    quadratic identity alone would allow either sign.
    """
    th = _theta(derived, s)
    pref = (derived.a / derived.b) * (derived.a - derived.c)
    x = -1j * pref * scaled_cos(th, derived.ck)
    y = 1j * pref * scaled_sin(th, derived.ck)
    z = -derived.b * np.asarray(s, dtype=float) / derived.c
    return np.stack([x, y, z.astype(complex)], axis=-1)


def fundamental_closed_form(
    derived: HelixDerived, s: float, variant: SignVariant = SignVariant.PLUS
) -> FundamentalMatrix:
    """Exact identity-initialized fundamental matrix for the helix profile.

    The generator is constant, so the matrix is the exponential
    ``cos(omega s / 2) I - i (sin(omega s / 2)/omega) [[kappa, st], [st, -kappa]]``
    with ``st = sigma * tau``; unitary with determinant exactly one,
    and periodic: at ``s = 4 pi c`` it returns to the identity.
    """
    kappa = derived.kappa
    st = variant.sigma * derived.tau
    omega = derived.omega
    half = 0.5 * omega * float(s)
    cos_h = np.cos(half)
    sin_h = np.sin(half) / omega
    f1 = complex(cos_h, -kappa * sin_h)
    f2 = complex(0.0, -st * sin_h)
    return FundamentalMatrix(f1, f2, f2, f1.conjugate())


def fundamental_closed_form_samples(
    derived: HelixDerived, s_values: np.ndarray, variant: SignVariant = SignVariant.PLUS
) -> FundamentalSamples:
    """Vectorized fundamental_closed_form along a sequence of arc lengths."""
    s_values = np.asarray(s_values, dtype=float)
    half = 0.5 * derived.omega * s_values
    cos_h = np.cos(half)
    sin_h = np.sin(half) / derived.omega
    mats = np.empty((len(s_values), 2, 2), dtype=complex)
    mats[:, 0, 0] = cos_h - 1j * derived.kappa * sin_h
    mats[:, 0, 1] = -1j * variant.sigma * derived.tau * sin_h
    mats[:, 1, 0] = mats[:, 0, 1]
    mats[:, 1, 1] = cos_h + 1j * derived.kappa * sin_h
    return FundamentalSamples(s_values, mats, variant)


def separable_fundamental(
    derived: HelixDerived, torsion_integral: float, variant: SignVariant
) -> FundamentalMatrix:
    """Coefficient set of the separable solution as a fundamental matrix.

    For the plus variant the entries are ``(w2 E, -w1, E, -1)`` with
    ``E = exp(i (c/b) * torsion_integral)``; the minus variant uses
    ``(-w1/E, w2, 1/E, -1)``. These are valid fundamental matrices of
    the respective linear systems but are neither unitary nor
    determinant-one, so tangent triples recovered from them are
    complex: the plus set reproduces closed_form_tangent exactly, the
    minus set the same triple with the first component negated.
    """
    theta = (derived.c / derived.b) * float(torsion_integral)
    phase = np.exp(1j * theta)
    if variant is SignVariant.PLUS:
        return FundamentalMatrix(derived.w2 * phase, -derived.w1 + 0j,
                                 phase, -1.0 + 0j)
    return FundamentalMatrix(-derived.w1 / phase, derived.w2 + 0j,
                             1.0 / phase, -1.0 + 0j)


def real_helix_oracle(derived: HelixDerived, grid: ArcLengthGrid) -> CurveSamples:
    """Reference real helix matching the identity-initialized reconstruction.

    Runs the standard pipeline (tangent recovery + cumulative Simpson)
    on the *exact* closed-form fundamental matrices, so the result
    carries no ODE-integration error: only quadrature error, which is
    itself at rounding level because the tangent components are
    trigonometric. Starts at the origin.
    """
    samples = fundamental_closed_form_samples(derived, grid.nodes(), SignVariant.PLUS)
    tang = tangent_components(samples)
    return integrate_tangent(samples.s, tang.real, np.zeros(3))
