# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled stepping kernels.

Same contracts as ``_kernels_py``: classical RK4 over pre-sampled
curvature/torsion arrays with per-step renormalization. These loops are
strictly sequential (each step feeds the next), which is why they are
compiled rather than vectorized.
"""

import numpy as np

from libc.math cimport sqrt

BACKEND = "compiled"


cdef inline void _fs_rhs(double kap, double tau, double* y, double* dy) noexcept nogil:
    # y holds tangent(0:3), normal(3:6), binormal(6:9)
    dy[0] = kap * y[3]
    dy[1] = kap * y[4]
    dy[2] = kap * y[5]
    dy[3] = -kap * y[0] + tau * y[6]
    dy[4] = -kap * y[1] + tau * y[7]
    dy[5] = -kap * y[2] + tau * y[8]
    dy[6] = -tau * y[3]
    dy[7] = -tau * y[4]
    dy[8] = -tau * y[5]


def frame_rk4(double[::1] kappa_nodes, double[::1] tau_nodes,
              double[::1] kappa_mids, double[::1] tau_mids,
              double h, double[:, ::1] frame0):
    """RK4 on the 9 frame components with per-step modified Gram-Schmidt."""
    cdef Py_ssize_t n = kappa_mids.shape[0]
    out_arr = np.empty((n + 1, 3, 3), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef double y[9]
    cdef double k1[9]
    cdef double k2[9]
    cdef double k3[9]
    cdef double k4[9]
    cdef double tmp[9]
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef double norm, dot
    cdef Py_ssize_t i, j

    for j in range(3):
        y[j] = frame0[0, j]
        y[3 + j] = frame0[1, j]
        y[6 + j] = frame0[2, j]
    with nogil:
        for j in range(9):
            out[0, j // 3, j % 3] = y[j]
        for i in range(n):
            _fs_rhs(kappa_nodes[i], tau_nodes[i], y, k1)
            for j in range(9):
                tmp[j] = y[j] + half * k1[j]
            _fs_rhs(kappa_mids[i], tau_mids[i], tmp, k2)
            for j in range(9):
                tmp[j] = y[j] + half * k2[j]
            _fs_rhs(kappa_mids[i], tau_mids[i], tmp, k3)
            for j in range(9):
                tmp[j] = y[j] + h * k3[j]
            _fs_rhs(kappa_nodes[i + 1], tau_nodes[i + 1], tmp, k4)
            for j in range(9):
                y[j] = y[j] + sixth * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j])

            # modified Gram-Schmidt: tangent, normal, rebuilt binormal
            norm = sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])
            y[0] /= norm
            y[1] /= norm
            y[2] /= norm
            dot = y[3] * y[0] + y[4] * y[1] + y[5] * y[2]
            y[3] -= dot * y[0]
            y[4] -= dot * y[1]
            y[5] -= dot * y[2]
            norm = sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5])
            y[3] /= norm
            y[4] /= norm
            y[5] /= norm
            y[6] = y[1] * y[5] - y[2] * y[4]
            y[7] = y[2] * y[3] - y[0] * y[5]
            y[8] = y[0] * y[4] - y[1] * y[3]

            for j in range(9):
                out[i + 1, j // 3, j % 3] = y[j]
    return out_arr


def fundamental_rk4(double[::1] kappa_nodes, double[::1] tau_nodes,
                    double[::1] kappa_mids, double[::1] tau_mids,
                    double h, double sigma):
    """RK4 on the trace-free 2x2 system from identity, re-unitarized each step."""
    cdef Py_ssize_t n = kappa_mids.shape[0]
    out_arr = np.empty((n + 1, 2, 2), dtype=np.complex128)
    cdef double complex[:, :, ::1] out = out_arr
    cdef double complex f1 = 1.0, f2 = 0.0, f3 = 0.0, f4 = 1.0
    cdef double complex a1, b1, c1, d1, a2, b2, c2, d2
    cdef double complex a3, b3, c3, d3, a4, b4, c4, d4
    cdef double complex g1, g2, g3, g4, proj, det, mi = -1.0j
    cdef double p0, q0, pm, qm, p1, q1, norm
    cdef double half = 0.5 * h
    cdef double sixth = h / 6.0
    cdef Py_ssize_t i

    with nogil:
        out[0, 0, 0] = f1
        out[0, 0, 1] = f2
        out[0, 1, 0] = f3
        out[0, 1, 1] = f4
        for i in range(n):
            p0 = 0.5 * kappa_nodes[i]
            q0 = 0.5 * sigma * tau_nodes[i]
            pm = 0.5 * kappa_mids[i]
            qm = 0.5 * sigma * tau_mids[i]
            p1 = 0.5 * kappa_nodes[i + 1]
            q1 = 0.5 * sigma * tau_nodes[i + 1]

            a1 = mi * (p0 * f1 + q0 * f3)
            b1 = mi * (p0 * f2 + q0 * f4)
            c1 = mi * (q0 * f1 - p0 * f3)
            d1 = mi * (q0 * f2 - p0 * f4)

            g1 = f1 + half * a1
            g2 = f2 + half * b1
            g3 = f3 + half * c1
            g4 = f4 + half * d1
            a2 = mi * (pm * g1 + qm * g3)
            b2 = mi * (pm * g2 + qm * g4)
            c2 = mi * (qm * g1 - pm * g3)
            d2 = mi * (qm * g2 - pm * g4)

            g1 = f1 + half * a2
            g2 = f2 + half * b2
            g3 = f3 + half * c2
            g4 = f4 + half * d2
            a3 = mi * (pm * g1 + qm * g3)
            b3 = mi * (pm * g2 + qm * g4)
            c3 = mi * (qm * g1 - pm * g3)
            d3 = mi * (qm * g2 - pm * g4)

            g1 = f1 + h * a3
            g2 = f2 + h * b3
            g3 = f3 + h * c3
            g4 = f4 + h * d3
            a4 = mi * (p1 * g1 + q1 * g3)
            b4 = mi * (p1 * g2 + q1 * g4)
            c4 = mi * (q1 * g1 - p1 * g3)
            d4 = mi * (q1 * g2 - p1 * g4)

            f1 = f1 + sixth * (a1 + 2.0 * (a2 + a3) + a4)
            f2 = f2 + sixth * (b1 + 2.0 * (b2 + b3) + b4)
            f3 = f3 + sixth * (c1 + 2.0 * (c2 + c3) + c4)
            f4 = f4 + sixth * (d1 + 2.0 * (d2 + d3) + d4)

            # re-unitarize: unit first column, orthogonal second, det exactly 1
            norm = sqrt(f1.real * f1.real + f1.imag * f1.imag
                        + f3.real * f3.real + f3.imag * f3.imag)
            f1 = f1 / norm
            f3 = f3 / norm
            proj = (f1.real - 1.0j * f1.imag) * f2 + (f3.real - 1.0j * f3.imag) * f4
            f2 = f2 - proj * f1
            f4 = f4 - proj * f3
            det = f1 * f4 - f2 * f3
            f2 = f2 / det
            f4 = f4 / det

            out[i + 1, 0, 0] = f1
            out[i + 1, 0, 1] = f2
            out[i + 1, 1, 0] = f3
            out[i + 1, 1, 1] = f4
    return out_arr
