"""Intrinsic curve data: curvature/torsion profiles and uniform arc-length grids.

A profile maps arc length ``s`` to the pair ``(kappa(s), tau(s))``. Four
concrete kinds are supported:

* :class:`ConstantProfile` -- fixed ``kappa >= 0`` and ``tau``;
* :class:`HelixSpec` -- cylinder radius ``a > 0`` and pitch parameter
  ``b > 0``, giving ``kappa = a/c^2``, ``tau = b/c^2`` with
  ``c = sqrt(a^2 + b^2)``;
* :class:`ExpressionPair` -- parsed expression trees in ``s``;
* :class:`TabulatedProfile` -- sampled values interpolated by a monotone
  cubic Hermite spline (PCHIP); evaluation outside the covered range is
  an error, never extrapolation.

Only the constant-like kinds validate ``kappa``'s sign; expression and
tabulated profiles are evaluated as given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from . import expr as _expr
from .errors import GridError, InputError, ProfileRangeError

__all__ = [
    "IntrinsicProfile",
    "ConstantProfile",
    "HelixSpec",
    "ExpressionPair",
    "TabulatedProfile",
    "ArcLengthGrid",
    "eval_profile",
    "profile_arrays",
    "accumulated_torsion",
]


@dataclass(frozen=True)
class ConstantProfile:
    """Constant curvature and torsion."""

    kappa: float
    tau: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and math.isfinite(self.tau)):
            raise InputError("kappa and tau must be finite")
        if self.kappa < 0.0:
            raise InputError(f"curvature must be >= 0, got {self.kappa}")

    def kappa_tau(self, s: float) -> tuple[float, float]:
        return self.kappa, self.tau

    def kappa_tau_arrays(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        return np.full_like(s, self.kappa), np.full_like(s, self.tau)


@dataclass(frozen=True)
class HelixSpec:
    """Circular helix on a cylinder of radius ``a`` with pitch parameter ``b``.

    Derived values: ``c = sqrt(a^2 + b^2)``, ``kappa = a/c^2``,
    ``tau = b/c^2``, and the ratio ``xi = kappa/tau = a/b``.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise InputError(f"helix radius a must be > 0, got {self.a}")
        if not (self.b > 0.0 and math.isfinite(self.b)):
            raise InputError(f"helix pitch parameter b must be > 0, got {self.b}")

    @property
    def c(self) -> float:
        return math.hypot(self.a, self.b)

    @property
    def kappa(self) -> float:
        return self.a / (self.a * self.a + self.b * self.b)

    @property
    def tau(self) -> float:
        return self.b / (self.a * self.a + self.b * self.b)

    @property
    def xi(self) -> float:
        return self.a / self.b

    def kappa_tau(self, s: float) -> tuple[float, float]:
        return self.kappa, self.tau

    def kappa_tau_arrays(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        return np.full_like(s, self.kappa), np.full_like(s, self.tau)


class ExpressionPair:
    """Curvature and torsion given as expression trees in ``s``."""

    def __init__(self, kappa: "_expr.Expression | str", tau: "_expr.Expression | str"):
        self.kappa_expr = (
            _expr.parse_expression(kappa) if isinstance(kappa, str) else kappa
        )
        self.tau_expr = _expr.parse_expression(tau) if isinstance(tau, str) else tau

    @classmethod
    def from_text(cls, kappa_text: str, tau_text: str) -> "ExpressionPair":
        return cls(kappa_text, tau_text)

    def kappa_tau(self, s: float) -> tuple[float, float]:
        return (
            _expr.eval_expression(self.kappa_expr, s),
            _expr.eval_expression(self.tau_expr, s),
        )

    def kappa_tau_arrays(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        return (
            _expr.eval_expression_array(self.kappa_expr, s),
            _expr.eval_expression_array(self.tau_expr, s),
        )

    def __repr__(self):
        return (
            f"ExpressionPair(kappa={_expr.to_text(self.kappa_expr)!r}, "
            f"tau={_expr.to_text(self.tau_expr)!r})"
        )


class TabulatedProfile:
    """Sampled curvature/torsion interpolated by monotone cubic Hermite (PCHIP).

    The sample abscissae must be strictly increasing and all values
    finite. Exact on linear data; never overshoots monotone data.
    """

    def __init__(self, s_values, kappa_values, tau_values):
        s_arr = np.asarray(s_values, dtype=float)
        k_arr = np.asarray(kappa_values, dtype=float)
        t_arr = np.asarray(tau_values, dtype=float)
        if s_arr.ndim != 1 or len(s_arr) < 2:
            raise InputError("tabulated profile needs at least 2 samples")
        if k_arr.shape != s_arr.shape or t_arr.shape != s_arr.shape:
            raise InputError("tabulated profile arrays must share one length")
        if not np.all(np.diff(s_arr) > 0.0):
            raise InputError("tabulated s values must be strictly increasing")
        if not (
            np.isfinite(s_arr).all()
            and np.isfinite(k_arr).all()
            and np.isfinite(t_arr).all()
        ):
            raise InputError("tabulated profile values must be finite")
        self.s_values = s_arr
        self.kappa_values = k_arr
        self.tau_values = t_arr
        self._kappa_interp = PchipInterpolator(s_arr, k_arr, extrapolate=False)
        self._tau_interp = PchipInterpolator(s_arr, t_arr, extrapolate=False)

    def _check_range(self, s: np.ndarray) -> None:
        lo, hi = self.s_values[0], self.s_values[-1]
        if np.any(s < lo) or np.any(s > hi):
            bad = float(s[np.argmax((s < lo) | (s > hi))]) if s.ndim else float(s)
            raise ProfileRangeError(
                f"s={bad} outside tabulated range [{lo}, {hi}]"
            )

    def kappa_tau(self, s: float) -> tuple[float, float]:
        arr = np.asarray(float(s))
        self._check_range(arr)
        return float(self._kappa_interp(arr)), float(self._tau_interp(arr))

    def kappa_tau_arrays(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        self._check_range(s)
        return self._kappa_interp(s), self._tau_interp(s)

    def __repr__(self):
        return (
            f"TabulatedProfile({len(self.s_values)} samples on "
            f"[{self.s_values[0]}, {self.s_values[-1]}])"
        )


IntrinsicProfile = Union[ConstantProfile, HelixSpec, ExpressionPair, TabulatedProfile]


def eval_profile(profile: IntrinsicProfile, s: float) -> tuple[float, float]:
    """Evaluate ``(kappa(s), tau(s))`` for any profile kind."""
    return profile.kappa_tau(s)


def profile_arrays(
    profile: IntrinsicProfile, s: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized profile evaluation over an array of arc lengths."""
    return profile.kappa_tau_arrays(np.asarray(s, dtype=float))


@dataclass(frozen=True)
class ArcLengthGrid:
    """Uniform grid of ``n`` intervals (``n`` even) on ``[s0, s1]``."""

    s0: float
    s1: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.s0) and math.isfinite(self.s1)):
            raise GridError("grid endpoints must be finite")
        if not self.s1 > self.s0:
            raise GridError(f"need s1 > s0, got [{self.s0}, {self.s1}]")
        if self.n < 2 or self.n % 2 != 0:
            raise GridError(f"interval count must be even and >= 2, got {self.n}")

    @property
    def h(self) -> float:
        return (self.s1 - self.s0) / self.n

    def nodes(self) -> np.ndarray:
        """All ``n + 1`` node positions, endpoints exact."""
        return np.linspace(self.s0, self.s1, self.n + 1)

    def mids(self) -> np.ndarray:
        """The ``n`` interval midpoints (stage points for the integrators)."""
        nodes = self.nodes()
        return 0.5 * (nodes[:-1] + nodes[1:])


def accumulated_torsion(
    profile: IntrinsicProfile, s0: float, s1: float, n: int
) -> float:
    """Integral of ``tau`` over ``[s0, s1]`` by composite Simpson.

    Each of the ``n`` grid intervals is one Simpson panel using its
    midpoint, i.e. composite Simpson on ``2n`` subintervals. ``n`` must
    be even (shared grid contract with the curve integrators). Exact
    (to rounding) for constant torsion; fourth-order error otherwise.
    """
    grid = ArcLengthGrid(s0, s1, n)
    _, tau_nodes = profile_arrays(profile, grid.nodes())
    _, tau_mids = profile_arrays(profile, grid.mids())
    ends = tau_nodes[0] + tau_nodes[-1]
    interior = 2.0 * float(np.sum(tau_nodes[1:-1]))
    return float(grid.h / 6.0 * (ends + interior + 4.0 * float(np.sum(tau_mids))))
