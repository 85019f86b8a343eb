"""Shared test utilities: seeded generators and a scalar Riccati stepper."""

from __future__ import annotations

import numpy as np

from curverec.expr import BinOp, Call, Expression, Neg, Num, Pi, Var
from curverec.intrinsic import ArcLengthGrid, IntrinsicProfile, profile_arrays
from curverec.riccati import SignVariant, riccati_rhs

_FUNCS = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")
_OPS = ("+", "-", "*", "/", "^")
_LITERALS = (0.0, 1.0, 2.0, 3.0, 0.5, 0.25, 1.75, 10.0, 0.125)


def random_expression_tree(rng: np.random.Generator, depth: int = 4) -> Expression:
    """Random expression tree drawn from the grammar.

    Only shapes the parser itself can produce are generated (literals
    are non-negative; negation is an explicit node), so a structural
    round-trip comparison is meaningful.
    """
    if depth <= 0:
        roll = rng.random()
        if roll < 0.4:
            return Num(float(rng.choice(_LITERALS)))
        if roll < 0.5:
            return Num(float(np.round(rng.uniform(0.0, 9.0), 3)))
        if roll < 0.9:
            return Var()
        return Pi()
    roll = rng.random()
    if roll < 0.5:
        op = str(rng.choice(_OPS))
        return BinOp(
            op,
            random_expression_tree(rng, depth - 1),
            random_expression_tree(rng, depth - 1),
        )
    if roll < 0.7:
        return Call(str(rng.choice(_FUNCS)), random_expression_tree(rng, depth - 1))
    if roll < 0.8:
        return Neg(random_expression_tree(rng, depth - 1))
    return random_expression_tree(rng, 0)


def random_unit_vectors(
    rng: np.random.Generator, count: int, v3_max: float = 1.0
) -> np.ndarray:
    """Uniform random unit 3-vectors, rejecting third components above v3_max."""
    out = np.empty((count, 3))
    filled = 0
    while filled < count:
        v = rng.normal(size=(count, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        v = v[v[:, 2] < v3_max]
        take = min(len(v), count - filled)
        out[filled:filled + take] = v[:take]
        filled += take
    return out


def random_det1_matrix(rng: np.random.Generator) -> np.ndarray:
    """Random complex 2x2 matrix scaled to determinant exactly one."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) > 0.1:  # keep the rescaling well conditioned
            return m / np.sqrt(det)


def random_unitary_det1(rng: np.random.Generator) -> np.ndarray:
    """Random special-unitary 2x2 matrix (uniform on the group)."""
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    a = complex(v[0], v[1])
    c = complex(v[2], v[3])
    return np.array([[a, -c.conjugate()], [c, a.conjugate()]])


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Random proper rotation matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0.0:
        q[:, 2] = -q[:, 2]
    return q


def scalar_riccati_rk4(
    profile: IntrinsicProfile,
    grid: ArcLengthGrid,
    w0: complex,
    variant: SignVariant,
) -> np.ndarray:
    """Classical RK4 directly on the scalar Riccati equation.

    Exists only as an independent cross-check of the projective
    integrator; it breaks down whenever the solution passes near
    infinity, which is exactly why production code never uses it.
    """
    kn, tn = profile_arrays(profile, grid.nodes())
    km, tm = profile_arrays(profile, grid.mids())
    h = grid.h
    w = complex(w0)
    values = np.empty(grid.n + 1, dtype=complex)
    values[0] = w
    for i in range(grid.n):
        k1 = riccati_rhs(w, kn[i], tn[i], variant)
        k2 = riccati_rhs(w + 0.5 * h * k1, km[i], tm[i], variant)
        k3 = riccati_rhs(w + 0.5 * h * k2, km[i], tm[i], variant)
        k4 = riccati_rhs(w + h * k3, kn[i + 1], tn[i + 1], variant)
        w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        values[i + 1] = w
    return values
