"""Pure-Python stepping kernels.

Fallback implementations of the two hot loops; signatures and stepping
order match the compiled module in ``_kernels.pyx`` exactly. Both take
curvature/torsion pre-sampled at the grid nodes and interval midpoints,
so the loop body is pure arithmetic: classical RK4 stages at
``s``, ``s + h/2`` (midpoint value reused for the two middle stages) and
``s + h``, followed by a renormalization that pins the invariants.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def frame_rk4(kappa_nodes, tau_nodes, kappa_mids, tau_mids, h, frame0):
    """Integrate the Frenet-Serret frame system with per-step re-orthonormalization.

    frame0 is a 3x3 array with rows (tangent, normal, binormal); the
    return value has shape (n+1, 3, 3). After every RK4 step the frame
    is re-orthonormalized by modified Gram-Schmidt in the order tangent,
    normal, binormal, and the binormal is rebuilt as tangent x normal to
    enforce right-handedness.
    """
    kn = np.asarray(kappa_nodes, dtype=float)
    tn = np.asarray(tau_nodes, dtype=float)
    km = np.asarray(kappa_mids, dtype=float)
    tm = np.asarray(tau_mids, dtype=float)
    n = km.shape[0]
    out = np.empty((n + 1, 3, 3))
    f = np.array(frame0, dtype=float)
    out[0] = f
    sixth = h / 6.0
    half = 0.5 * h
    for i in range(n):
        k1 = _fs_rhs(f, kn[i], tn[i])
        k2 = _fs_rhs(f + half * k1, km[i], tm[i])
        k3 = _fs_rhs(f + half * k2, km[i], tm[i])
        k4 = _fs_rhs(f + h * k3, kn[i + 1], tn[i + 1])
        f = f + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        _orthonormalize(f)
        out[i + 1] = f
    return out


def _fs_rhs(f, kappa, tau):
    d = np.empty_like(f)
    d[0] = kappa * f[1]
    d[1] = -kappa * f[0] + tau * f[2]
    d[2] = -tau * f[1]
    return d


def _orthonormalize(f):
    # modified Gram-Schmidt: tangent, then normal, then rebuilt binormal
    f[0] /= np.sqrt(f[0] @ f[0])
    f[1] -= (f[1] @ f[0]) * f[0]
    f[1] /= np.sqrt(f[1] @ f[1])
    f[2] = np.cross(f[0], f[1])


def fundamental_rk4(kappa_nodes, tau_nodes, kappa_mids, tau_mids, h, sigma):
    """Integrate the trace-free 2x2 linear system from the identity matrix.

    The generator is ``[[-i*kappa/2, -i*sigma*tau/2],
    [-i*sigma*tau/2, +i*kappa/2]]`` with ``sigma = +-1`` selecting the
    torsion sign variant. Returns shape (n+1, 2, 2) complex. After every
    step the matrix is re-unitarized: first column normalized, second
    column orthogonalized against it, then the second column rescaled so
    the determinant is exactly one.
    """
    kn = np.asarray(kappa_nodes, dtype=float)
    tn = np.asarray(tau_nodes, dtype=float)
    km = np.asarray(kappa_mids, dtype=float)
    tm = np.asarray(tau_mids, dtype=float)
    n = km.shape[0]
    out = np.empty((n + 1, 2, 2), dtype=complex)
    f1 = 1.0 + 0.0j
    f2 = 0.0 + 0.0j
    f3 = 0.0 + 0.0j
    f4 = 1.0 + 0.0j
    out[0, 0, 0] = f1
    out[0, 0, 1] = f2
    out[0, 1, 0] = f3
    out[0, 1, 1] = f4
    sixth = h / 6.0
    half = 0.5 * h
    sg = float(sigma)
    for i in range(n):
        p0 = 0.5 * kn[i]
        q0 = 0.5 * sg * tn[i]
        pm = 0.5 * km[i]
        qm = 0.5 * sg * tm[i]
        p1 = 0.5 * kn[i + 1]
        q1 = 0.5 * sg * tn[i + 1]

        a1, b1, c1, d1 = _gen_apply(p0, q0, f1, f2, f3, f4)
        a2, b2, c2, d2 = _gen_apply(
            pm, qm, f1 + half * a1, f2 + half * b1, f3 + half * c1, f4 + half * d1
        )
        a3, b3, c3, d3 = _gen_apply(
            pm, qm, f1 + half * a2, f2 + half * b2, f3 + half * c2, f4 + half * d2
        )
        a4, b4, c4, d4 = _gen_apply(
            p1, q1, f1 + h * a3, f2 + h * b3, f3 + h * c3, f4 + h * d3
        )
        f1 = f1 + sixth * (a1 + 2.0 * (a2 + a3) + a4)
        f2 = f2 + sixth * (b1 + 2.0 * (b2 + b3) + b4)
        f3 = f3 + sixth * (c1 + 2.0 * (c2 + c3) + c4)
        f4 = f4 + sixth * (d1 + 2.0 * (d2 + d3) + d4)

        # re-unitarize: unit first column, orthogonal second, det exactly 1
        norm = (f1.real * f1.real + f1.imag * f1.imag
                + f3.real * f3.real + f3.imag * f3.imag) ** 0.5
        f1 /= norm
        f3 /= norm
        proj = f1.conjugate() * f2 + f3.conjugate() * f4
        f2 -= proj * f1
        f4 -= proj * f3
        det = f1 * f4 - f2 * f3
        f2 /= det
        f4 /= det

        out[i + 1, 0, 0] = f1
        out[i + 1, 0, 1] = f2
        out[i + 1, 1, 0] = f3
        out[i + 1, 1, 1] = f4
    return out


def _gen_apply(p, q, f1, f2, f3, f4):
    # generator times matrix; multiplication by -i done inline
    return (
        -1j * (p * f1 + q * f3),
        -1j * (p * f2 + q * f4),
        -1j * (q * f1 - p * f3),
        -1j * (q * f2 - p * f4),
    )
