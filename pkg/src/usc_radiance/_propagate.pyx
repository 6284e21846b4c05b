# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled RK4 period propagator for the vectorized master equation.

Mirrors ``_propagate_py.propagate_period`` exactly; the inner loop runs
without the GIL and uses BLAS zgemv for the two matrix-vector products per
RK4 stage.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos
from scipy.linalg.cython_blas cimport zgemv

cnp.import_array()

ctypedef double complex zcomplex


cdef inline void _rhs(int n, zcomplex* l0, zcomplex* lv, double coeff,
                      zcomplex* x, zcomplex* out) noexcept nogil:
    # out = l0 @ x + coeff * (lv @ x)
    cdef char trans = b'N'
    cdef int inc = 1
    cdef zcomplex one = 1.0
    cdef zcomplex zero = 0.0
    cdef zcomplex alpha
    zgemv(&trans, &n, &n, &one, l0, &n, x, &inc, &zero, out, &inc)
    if coeff != 0.0:
        alpha = coeff
        zgemv(&trans, &n, &n, &alpha, lv, &n, x, &inc, &one, out, &inc)


def propagate_period(zcomplex[::1, :] l0, zcomplex[::1, :] lv, zcomplex[::1] y,
                     double t0, double dt, long nsteps, double omega_d,
                     double Omega, zcomplex[::1] w_obs, zcomplex[::1] rho_acc):
    """Advance ``y`` through one drive period with fixed-step RK4.

    Same contract as the NumPy fallback: ``y`` and ``rho_acc`` are updated
    in place, the return value is the trapezoid average of
    ``Re(w_obs . y)`` over the period.
    """
    cdef int n = y.shape[0]
    if l0.shape[0] != n or l0.shape[1] != n or lv.shape[0] != n or lv.shape[1] != n:
        raise ValueError("matrix and vector dimensions disagree")
    if w_obs.shape[0] != n or rho_acc.shape[0] != n:
        raise ValueError("observable or accumulator length mismatch")

    work = np.empty((5, n), dtype=np.complex128)
    cdef zcomplex[:, ::1] buf = work
    cdef zcomplex* k1 = &buf[0, 0]
    cdef zcomplex* k2 = &buf[1, 0]
    cdef zcomplex* k3 = &buf[2, 0]
    cdef zcomplex* k4 = &buf[3, 0]
    cdef zcomplex* stage = &buf[4, 0]
    cdef zcomplex* yp = &y[0]
    cdef zcomplex* l0p = &l0[0, 0]
    cdef zcomplex* lvp = &lv[0, 0]
    cdef zcomplex* wp = &w_obs[0]
    cdef zcomplex* accp = &rho_acc[0]

    cdef double obs_acc, weight, t, half_dt, sixth_dt
    cdef zcomplex dot
    cdef long i
    cdef int j

    with nogil:
        half_dt = 0.5 * dt
        sixth_dt = dt / 6.0
        dot = 0.0
        for j in range(n):
            dot = dot + wp[j] * yp[j]
            accp[j] = 0.5 * yp[j]
        obs_acc = 0.5 * dot.real
        for i in range(nsteps):
            t = t0 + i * dt
            _rhs(n, l0p, lvp, Omega * cos(omega_d * t), yp, k1)
            for j in range(n):
                stage[j] = yp[j] + half_dt * k1[j]
            _rhs(n, l0p, lvp, Omega * cos(omega_d * (t + half_dt)), stage, k2)
            for j in range(n):
                stage[j] = yp[j] + half_dt * k2[j]
            _rhs(n, l0p, lvp, Omega * cos(omega_d * (t + half_dt)), stage, k3)
            for j in range(n):
                stage[j] = yp[j] + dt * k3[j]
            _rhs(n, l0p, lvp, Omega * cos(omega_d * (t + dt)), stage, k4)
            weight = 0.5 if i == nsteps - 1 else 1.0
            dot = 0.0
            for j in range(n):
                yp[j] = yp[j] + sixth_dt * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
                dot = dot + wp[j] * yp[j]
                accp[j] = accp[j] + weight * yp[j]
            obs_acc += weight * dot.real
        for j in range(n):
            accp[j] = accp[j] / nsteps

    return obs_acc / nsteps
