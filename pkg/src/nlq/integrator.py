"""Numerical propagation of Bloch vectors (and 2-component states) under a model.

Fixed-step 4th-order integration with post-step projection back to the unit
sphere. Fixed steps are used deliberately: trajectories approach attracting
fixed points where adaptive controllers stall, and the closed forms used to
certify accuracy prefer a uniform grid. Integration may stop early when the
local speed drops below 1e-14 * g (the state is pinned at a fixed point).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .bloch import BlochVector, as_unit_array, bloch_distance, theta_of_s
from .models import TorsionModel, torsion_choose_B, torsion_gate_time

SPEED_FLOOR_FACTOR = 1e-14
DEFAULT_DT_FACTOR = 1e-3    # resolves the fastest built-in precession rate 2g
DEFAULT_MIN_STEPS = 1000
MAX_REFINEMENTS = 12


@dataclass(frozen=True)
class Trajectory:
    """An integrated path: strictly increasing times, unit points (N, 3)."""

    times: np.ndarray
    points: np.ndarray
    label: str
    stopped_early: bool = False
    max_step_norm_error: float = 0.0

    @property
    def final(self) -> np.ndarray:
        return self.points[-1]

    @property
    def final_bloch(self) -> BlochVector:
        return BlochVector.from_array(self.points[-1])

    def to_csv(self, energy: Callable[[np.ndarray], float] | None = None) -> str:
        """CSV rows t,x,y,z plus an E column when an energy function is given."""
        out = io.StringIO()
        out.write("t,x,y,z,E\n" if energy is not None else "t,x,y,z\n")
        for t, p in zip(self.times, self.points):
            base = f"{float(t)!r},{float(p[0])!r},{float(p[1])!r},{float(p[2])!r}"
            if energy is not None:
                out.write(base + f",{float(energy(p))!r}\n")
            else:
                out.write(base + "\n")
        return out.getvalue()


def default_step(model, duration: float) -> float:
    return min(DEFAULT_DT_FACTOR / model.g, duration / DEFAULT_MIN_STEPS)


def _run_fixed(model, r0: np.ndarray, duration: float, nsteps: int) -> Trajectory:
    dt = duration / nsteps
    code = getattr(model, "kernel_code", None)
    if code is not None:
        B = getattr(model, "B", 0.0)
        pts, last, max_err = _kernels.rk4_bloch(
            code, model.g, B, r0[0], r0[1], r0[2], dt, nsteps, SPEED_FLOOR_FACTOR * model.g
        )
        points = pts[: last + 1].copy()
    else:
        points, last, max_err = _python_rk4(model, r0, dt, nsteps)
    times = np.arange(last + 1) * dt
    return Trajectory(
        times=times,
        points=points,
        label=model.label,
        stopped_early=(last < nsteps),
        max_step_norm_error=max_err,
    )


def _python_rk4(model, r0: np.ndarray, dt: float, nsteps: int):
    """Generic path for user-defined models; mirrors the compiled kernel."""
    f = model.velocity
    floor = SPEED_FLOOR_FACTOR * model.g
    out = np.empty((nsteps + 1, 3))
    out[0] = r = r0.copy()
    max_err = 0.0
    last = nsteps
    for i in range(nsteps):
        k1 = f(r)
        if float(np.dot(k1, k1)) < floor * floor:
            last = i
            break
        k2 = f(r + 0.5 * dt * k1)
        k3 = f(r + 0.5 * dt * k2)
        k4 = f(r + dt * k3)
        r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nrm = float(np.linalg.norm(r))
        max_err = max(max_err, abs(nrm - 1.0))
        r = r / nrm
        out[i + 1] = r
    return out[: last + 1], last, max_err


def propagate(model, r0, duration: float, *, step_control: float | None = None,
              dt: float | None = None) -> Trajectory:
    """Integrate dr/dt = v(r) from a unit vector r0 for the given duration.

    With step_control set, the step count is doubled until a further doubling
    moves the endpoint by less than step_control; without it, a single pass
    at the default step (or an explicit dt) is taken.
    """
    r0 = as_unit_array(r0)
    if duration < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration!r}")
    if duration == 0.0:
        return Trajectory(times=np.zeros(1), points=r0[None, :].copy(), label=model.label)
    if dt is not None:
        nsteps = max(1, int(math.ceil(duration / dt)))
    else:
        nsteps = max(1, int(math.ceil(duration / default_step(model, duration))))
    traj = _run_fixed(model, r0, duration, nsteps)
    if step_control is None:
        return traj
    for _ in range(MAX_REFINEMENTS):
        finer = _run_fixed(model, r0, duration, 2 * nsteps)
        if float(np.max(np.abs(finer.final - traj.final))) < step_control:
            return finer
        traj, nsteps = finer, 2 * nsteps
    raise RuntimeError(f"step refinement did not converge to {step_control!r}")


def propagate_wavefunction(model, psi0, duration: float, *, dt: float | None = None):
    """Integrate the 2-component state under H(psi) = u(<sigma>).sigma/2.

    Same stepper and defaults as `propagate`; states are renormalized each
    step. Returns (times, states) with states of shape (N, 2) complex.
    """
    a, b = complex(psi0[0]), complex(psi0[1])
    nrm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"state norm {nrm!r} is not 1 within 1e-9")
    if duration < 0.0:
        raise ValueError(f"duration must be >= 0, got {duration!r}")
    step = dt if dt is not None else default_step(model, duration)
    nsteps = max(1, int(math.ceil(duration / step))) if duration > 0.0 else 0
    h = duration / nsteps if nsteps else 0.0
    u_of = model.u_field

    def deriv(a, b):
        # Bloch vector of the current normalized state
        cross = a.conjugate() * b
        r = np.array([2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2])
        ux, uy, uz = u_of(r)
        da = -0.5j * (uz * a + (ux - 1j * uy) * b)
        db = -0.5j * ((ux + 1j * uy) * a - uz * b)
        return da, db

    states = np.empty((nsteps + 1, 2), dtype=complex)
    states[0] = (a, b)
    for i in range(nsteps):
        k1a, k1b = deriv(a, b)
        k2a, k2b = deriv(a + 0.5 * h * k1a, b + 0.5 * h * k1b)
        k3a, k3b = deriv(a + 0.5 * h * k2a, b + 0.5 * h * k2b)
        k4a, k4b = deriv(a + h * k3a, b + h * k3b)
        a = a + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b = b + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        nrm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        a /= nrm
        b /= nrm
        states[i + 1] = (a, b)
    times = np.arange(nsteps + 1) * (h if nsteps else 1.0)
    return times, states


def monotonicity_violation_demo(n: int, g: float = 1.0) -> tuple[float, float]:
    """Drive the two promise states through the torsion gate and report distances.

    Returns (initial, final) Euclidean Bloch distances. Any linear map could
    only shrink the first number; the nonlinear gate grows it toward 2.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    theta1 = theta_of_s(1, n)
    B = torsion_choose_B(theta1, g)
    t_gate = torsion_gate_time(theta1, g).exact
    model = TorsionModel(g=g, B=B)
    c, s = math.cos(0.5 * theta1), math.sin(0.5 * theta1)
    r_a = BlochVector(c, 0.0, s)
    r_b = BlochVector(c, 0.0, -s)
    end_a = propagate(model, r_a, t_gate).final_bloch
    end_b = propagate(model, r_b, t_gate).final_bloch
    return bloch_distance(r_a, r_b), bloch_distance(end_a, end_b)
