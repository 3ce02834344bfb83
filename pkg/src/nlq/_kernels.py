"""Compiled fixed-step propagation kernels for the built-in models.

Kept separate so the rest of the package stays importable and debuggable
without touching numba. Kernel codes: 0 torsion, 1 Morse-Smale, 2 pitchfork.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def rk4_bloch(code, g, B, x0, y0, z0, dt, nsteps, speed_floor):
    """Classical 4th-order steps with per-step renormalization to the sphere.

    Returns (points, last_index, max_norm_error). Integration stops early at
    step i < nsteps when the local speed falls below speed_floor; points rows
    past last_index are unwritten.
    """
    out = np.empty((nsteps + 1, 3))
    x, y, z = x0, y0, z0
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    max_norm_err = 0.0
    last = nsteps
    floor2 = speed_floor * speed_floor
    for i in range(nsteps):
        if code == 0:
            k1x = -2.0 * g * z * y
            k1y = 2.0 * g * x * z - 2.0 * B * z
            k1z = 2.0 * B * y
        elif code == 1:
            k1x = 2.0 * g * x * z
            k1y = 2.0 * g * y * z
            k1z = 2.0 * g * (z * z - 1.0)
        else:
            k1x = -2.0 * g * x * z * z
            k1y = -2.0 * g * y * z * z
            k1z = 2.0 * g * (z - z * z * z)
        if k1x * k1x + k1y * k1y + k1z * k1z < floor2:
            last = i
            break
        h2 = 0.5 * dt
        ax, ay, az = x + h2 * k1x, y + h2 * k1y, z + h2 * k1z
        if code == 0:
            k2x = -2.0 * g * az * ay
            k2y = 2.0 * g * ax * az - 2.0 * B * az
            k2z = 2.0 * B * ay
        elif code == 1:
            k2x = 2.0 * g * ax * az
            k2y = 2.0 * g * ay * az
            k2z = 2.0 * g * (az * az - 1.0)
        else:
            k2x = -2.0 * g * ax * az * az
            k2y = -2.0 * g * ay * az * az
            k2z = 2.0 * g * (az - az * az * az)
        ax, ay, az = x + h2 * k2x, y + h2 * k2y, z + h2 * k2z
        if code == 0:
            k3x = -2.0 * g * az * ay
            k3y = 2.0 * g * ax * az - 2.0 * B * az
            k3z = 2.0 * B * ay
        elif code == 1:
            k3x = 2.0 * g * ax * az
            k3y = 2.0 * g * ay * az
            k3z = 2.0 * g * (az * az - 1.0)
        else:
            k3x = -2.0 * g * ax * az * az
            k3y = -2.0 * g * ay * az * az
            k3z = 2.0 * g * (az - az * az * az)
        ax, ay, az = x + dt * k3x, y + dt * k3y, z + dt * k3z
        if code == 0:
            k4x = -2.0 * g * az * ay
            k4y = 2.0 * g * ax * az - 2.0 * B * az
            k4z = 2.0 * B * ay
        elif code == 1:
            k4x = 2.0 * g * ax * az
            k4y = 2.0 * g * ay * az
            k4z = 2.0 * g * (az * az - 1.0)
        else:
            k4x = -2.0 * g * ax * az * az
            k4y = -2.0 * g * ay * az * az
            k4z = 2.0 * g * (az - az * az * az)
        s = dt / 6.0
        x += s * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y += s * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        z += s * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
        nrm = math.sqrt(x * x + y * y + z * z)
        err = abs(nrm - 1.0)
        if err > max_norm_err:
            max_norm_err = err
        x /= nrm
        y /= nrm
        z /= nrm
        out[i + 1, 0] = x
        out[i + 1, 1] = y
        out[i + 1, 2] = z
    return out, last, max_norm_err
