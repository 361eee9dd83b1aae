# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the classical kicked-top map.

Hot loops of the map iteration and the Benettin tangent propagation.
Expression order matches `_impl_py.py` line by line (and the extension is
built with FP contraction off) so both backends produce bit-identical
trajectories; keep the two files in sync.
"""

from libc.math cimport cos, fabs, log, sin, sqrt

RENORM_THRESHOLD = 1e-15
cdef double _RENORM = 1e-15


def step(double x, double y, double z, double kappa):
    """One kick; returns (x', y', z', drift). Mirrors _impl_py.step."""
    cdef double c, s, xn, yn, zn, nrm, d
    c = cos(kappa * x)
    s = sin(kappa * x)
    xn = z * c + y * s
    yn = y * c - z * s
    zn = -x
    nrm = sqrt(xn * xn + yn * yn + zn * zn)
    d = fabs(nrm - 1.0)
    if d > _RENORM:
        xn = xn / nrm
        yn = yn / nrm
        zn = zn / nrm
    return xn, yn, zn, d


def run_trajectory(double x, double y, double z, double kappa, Py_ssize_t n,
                   double[:, ::1] out):
    """Fill out[0..n] with the orbit of (x, y, z); returns cumulative drift."""
    cdef double drift = 0.0
    cdef double c, s, xn, yn, zn, nrm, d
    cdef Py_ssize_t i
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    with nogil:
        for i in range(n):
            c = cos(kappa * x)
            s = sin(kappa * x)
            xn = z * c + y * s
            yn = y * c - z * s
            zn = -x
            nrm = sqrt(xn * xn + yn * yn + zn * zn)
            d = fabs(nrm - 1.0)
            if d > _RENORM:
                xn = xn / nrm
                yn = yn / nrm
                zn = zn / nrm
            drift += d
            x = xn
            y = yn
            z = zn
            out[i + 1, 0] = x
            out[i + 1, 1] = y
            out[i + 1, 2] = z
    return drift


def run_lyapunov(double x, double y, double z, double kappa, Py_ssize_t n,
                 Py_ssize_t transient, double vx, double vy, double vz):
    """Benettin estimate of the largest Lyapunov exponent.

    Returns (lambda, drift). Mirrors _impl_py.run_lyapunov.
    """
    cdef double drift = 0.0
    cdef double acc = 0.0
    cdef double c, s, xn, yn, zn, nrm, d, wx, wy, wz, gn
    cdef Py_ssize_t i
    with nogil:
        for i in range(transient):
            c = cos(kappa * x)
            s = sin(kappa * x)
            xn = z * c + y * s
            yn = y * c - z * s
            zn = -x
            nrm = sqrt(xn * xn + yn * yn + zn * zn)
            d = fabs(nrm - 1.0)
            if d > _RENORM:
                xn = xn / nrm
                yn = yn / nrm
                zn = zn / nrm
            drift += d
            x = xn
            y = yn
            z = zn
        for i in range(n):
            c = cos(kappa * x)
            s = sin(kappa * x)
            wx = kappa * (y * c - z * s) * vx + s * vy + c * vz
            wy = -kappa * (z * c + y * s) * vx + c * vy - s * vz
            wz = -vx
            gn = sqrt(wx * wx + wy * wy + wz * wz)
            acc += log(gn)
            vx = wx / gn
            vy = wy / gn
            vz = wz / gn
            xn = z * c + y * s
            yn = y * c - z * s
            zn = -x
            nrm = sqrt(xn * xn + yn * yn + zn * zn)
            d = fabs(nrm - 1.0)
            if d > _RENORM:
                xn = xn / nrm
                yn = yn / nrm
                zn = zn / nrm
            drift += d
            x = xn
            y = yn
            z = zn
    return acc / n, drift
