"""Pure-Python kernels for the classical kicked-top map.

Fallback used when the compiled extension is unavailable (or forced via
KICKEDTOP_PURE_PYTHON=1). Expression order matches `_kernels.pyx` line by
line so both backends produce bit-identical trajectories; keep the two
files in sync.
"""

from math import cos, fabs, log, sin, sqrt

RENORM_THRESHOLD = 1e-15


def step(x, y, z, kappa):
    """One kick: turn by pi/2 about y then twist about z by kappa*X.

    Returns the new point and the observed norm drift |" new norm" - 1|
    (the point is renormalized when the drift exceeds RENORM_THRESHOLD).
    """
    c = cos(kappa * x)
    s = sin(kappa * x)
    xn = z * c + y * s
    yn = y * c - z * s
    zn = -x
    nrm = sqrt(xn * xn + yn * yn + zn * zn)
    d = fabs(nrm - 1.0)
    if d > RENORM_THRESHOLD:
        xn = xn / nrm
        yn = yn / nrm
        zn = zn / nrm
    return xn, yn, zn, d


def run_trajectory(x, y, z, kappa, n, out):
    """Fill out[0..n] with the orbit of (x, y, z); returns cumulative drift."""
    drift = 0.0
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    for i in range(n):
        x, y, z, d = step(x, y, z, kappa)
        drift += d
        out[i + 1, 0] = x
        out[i + 1, 1] = y
        out[i + 1, 2] = z
    return drift


def run_lyapunov(x, y, z, kappa, n, transient, vx, vy, vz):
    """Benettin estimate of the largest Lyapunov exponent.

    Runs `transient` kicks, then co-evolves the tangent vector (vx,vy,vz)
    through the analytic Jacobian for `n` kicks, renormalizing each step;
    the exponent is the mean log stretch. Returns (lambda, drift).
    """
    drift = 0.0
    for i in range(transient):
        x, y, z, d = step(x, y, z, kappa)
        drift += d
    acc = 0.0
    for i in range(n):
        c = cos(kappa * x)
        s = sin(kappa * x)
        # Jacobian-vector product at the pre-kick point.
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
        if d > RENORM_THRESHOLD:
            xn = xn / nrm
            yn = yn / nrm
            zn = zn / nrm
        drift += d
        x = xn
        y = yn
        z = zn
    return acc / n, drift
