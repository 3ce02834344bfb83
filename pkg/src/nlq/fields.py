"""Inverse design of state-dependent Hamiltonians from velocity fields.

A tangential velocity field v on the unit sphere determines an auxiliary
field u = r x v, and any u with v = u x r supplies the Hamiltonian
coefficients H = u(r) . sigma / 2. Radial components of u are gauge: they
change the Hamiltonian's form but not the motion.

Also provides the intrinsic surface divergence/curl (by central finite
differences in spherical coordinates), the identity div_S v = curl_S u,
conserved-energy evaluation, and grid diagnostics exportable as CSV.

Field evaluators are plain callables array(3) -> array(3), defined by their
Cartesian formulas on and off the sphere, so integrators may evaluate them
at intermediate off-sphere points.
"""

from __future__ import annotations

import functools
import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bloch import BlochVector, SphericalPoint, as_unit_array
from .errors import TangencyError, UnsupportedModelError

POLE_GUARD = 0.05           # spherical operators stay this far from the poles
GRID_SIZE = 1000
TANGENCY_TOL = 1e-10
FD_STEP = 1e-5              # central-difference step, radians

FieldEvaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class TangentField:
    """A velocity field; must satisfy field(r) . r = 0 on the validation grid."""

    evaluator: FieldEvaluator
    label: str = ""

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return np.asarray(self.evaluator(r), dtype=float)


@dataclass(frozen=True)
class UField:
    """A Hamiltonian-generating field; u x r reproduces the paired velocity field."""

    evaluator: FieldEvaluator
    label: str = ""
    gauge: str | None = None

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return np.asarray(self.evaluator(r), dtype=float)


@dataclass(frozen=True)
class HamiltonianCoefficients:
    """Components (hx, hy, hz) with H = (hx sx + hy sy + hz sz)/2, each state-dependent."""

    hx: Callable[[np.ndarray], float]
    hy: Callable[[np.ndarray], float]
    hz: Callable[[np.ndarray], float]
    label: str = ""

    def coefficients(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.array([self.hx(r), self.hy(r), self.hz(r)])

    def matrix(self, r) -> np.ndarray:
        """Materialize the 2x2 Hermitian matrix at the given Bloch vector."""
        cx, cy, cz = self.coefficients(r)
        return 0.5 * np.array([[cz, cx - 1j * cy], [cx + 1j * cy, -cz]], dtype=complex)


@functools.lru_cache(maxsize=8)
def _cached_grid(count: int, guard: float) -> np.ndarray:
    # Fibonacci lattice with z restricted to +/- cos(guard), so every point
    # respects the pole guard band by construction.
    golden = math.pi * (3.0 - math.sqrt(5.0))
    i = np.arange(count)
    z = math.cos(guard) * (1.0 - (2.0 * i + 1.0) / count)
    rho = np.sqrt(1.0 - z * z)
    phi = i * golden
    pts = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    pts.setflags(write=False)
    return pts


def validation_grid(count: int = GRID_SIZE, guard: float = POLE_GUARD) -> np.ndarray:
    """A (count, 3) quasi-uniform lattice of unit vectors away from both poles."""
    return _cached_grid(count, guard)


def tangency_residuals(field, grid: np.ndarray | None = None) -> np.ndarray:
    grid = validation_grid() if grid is None else grid
    return np.array([abs(float(np.dot(field(r), r))) for r in grid])


def u_from_v(v: TangentField, grid: np.ndarray | None = None) -> UField:
    """The canonical (purely tangential) generator u = r x v of a velocity field."""
    worst = float(tangency_residuals(v, grid).max())
    if worst > TANGENCY_TOL:
        raise TangencyError(
            f"field {v.label!r} is not tangential: max |v.r| = {worst:.3e} > {TANGENCY_TOL}"
        )
    return UField(lambda r: np.cross(np.asarray(r, dtype=float), v(r)), label=v.label)


def v_from_u(u: UField) -> TangentField:
    """The velocity field u x r; any radial part of u drops out automatically."""
    return TangentField(lambda r: np.cross(u(r), np.asarray(r, dtype=float)), label=u.label)


def hamiltonian_from_u(u: UField) -> HamiltonianCoefficients:
    return HamiltonianCoefficients(
        hx=lambda r: float(u(r)[0]),
        hy=lambda r: float(u(r)[1]),
        hz=lambda r: float(u(r)[2]),
        label=u.label,
    )


# ---------------------------------------------------------------------------
# intrinsic surface operators
# ---------------------------------------------------------------------------

def _frame(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    er = np.array([st * cp, st * sp, ct])
    eth = np.array([ct * cp, ct * sp, -st])
    eph = np.array([-sp, cp, 0.0])
    return er, eth, eph


def _check_guard(p: SphericalPoint) -> None:
    if p.theta < POLE_GUARD or p.theta > math.pi - POLE_GUARD:
        raise ValueError(
            f"theta {p.theta!r} is inside the pole guard band (< {POLE_GUARD} from a pole)"
        )


def _component(field, theta: float, phi: float, which: str) -> float:
    er, eth, eph = _frame(theta, phi)
    val = field(er)
    return float(np.dot(val, eth if which == "theta" else eph))


def div_s(v: TangentField, p: SphericalPoint, h: float = FD_STEP) -> float:
    """Surface divergence (1/sin t)[d_t(v_t sin t) + d_p v_p] by central differences."""
    _check_guard(p)
    t, f = p.theta, p.phi

    def vt_sin(theta):
        return _component(v, theta, f, "theta") * math.sin(theta)

    d_theta = (vt_sin(t + h) - vt_sin(t - h)) / (2.0 * h)
    d_phi = (_component(v, t, f + h, "phi") - _component(v, t, f - h, "phi")) / (2.0 * h)
    return (d_theta + d_phi) / math.sin(t)


def curl_s(u: UField, p: SphericalPoint, h: float = FD_STEP) -> float:
    """Radial component of curl u: (1/sin t)[d_t(u_p sin t) - d_p u_t].

    Only the tangential components enter, so gauge (radial) parts of u are
    invisible here.
    """
    _check_guard(p)
    t, f = p.theta, p.phi

    def up_sin(theta):
        return _component(u, theta, f, "phi") * math.sin(theta)

    d_theta = (up_sin(t + h) - up_sin(t - h)) / (2.0 * h)
    d_phi = (_component(u, t, f + h, "theta") - _component(u, t, f - h, "theta")) / (2.0 * h)
    return (d_theta - d_phi) / math.sin(t)


def _spherical_of(r: np.ndarray) -> SphericalPoint:
    theta = math.acos(min(max(float(r[2]), -1.0), 1.0))
    return SphericalPoint(theta, math.atan2(float(r[1]), float(r[0])))


def check_div_curl_identity(model, grid: np.ndarray | None = None) -> float:
    """max over the grid of |div_S v - curl_S u| for the model's paired fields."""
    grid = validation_grid() if grid is None else grid
    v = model.tangent_field()
    u = model.u_field_def()
    worst = 0.0
    for r in grid:
        p = _spherical_of(r)
        worst = max(worst, abs(div_s(v, p) - curl_s(u, p)))
    return worst


def energy(model, r) -> float:
    """Evaluate the model's conserved energy at r; error if it has none."""
    fn = getattr(model, "energy", None)
    if fn is None:
        raise UnsupportedModelError(
            f"model {getattr(model, 'label', model)!r} does not conserve an energy"
        )
    return float(fn(as_unit_array(r)))


def gauge_invariance_check(u: UField, lam: Callable[[np.ndarray], float],
                           grid: np.ndarray | None = None) -> float:
    """max grid deviation between the flows of u and of u + lam(r) r; should be ~0."""
    grid = validation_grid() if grid is None else grid
    gauged = UField(lambda r: u(r) + lam(np.asarray(r, dtype=float)) * np.asarray(r, dtype=float),
                    label=u.label, gauge="shifted")
    v0, v1 = v_from_u(u), v_from_u(gauged)
    worst = 0.0
    for r in grid:
        worst = max(worst, float(np.max(np.abs(v0(r) - v1(r)))))
    return worst


# ---------------------------------------------------------------------------
# grid diagnostics for plotting
# ---------------------------------------------------------------------------

def grid_diagnostics(model, grid: np.ndarray | None = None) -> list[dict]:
    """Per-grid-point rows: theta, phi, div_v, curl_u, tangency_residual."""
    grid = validation_grid() if grid is None else grid
    v = model.tangent_field()
    u = model.u_field_def()
    rows = []
    for r in grid:
        p = _spherical_of(r)
        rows.append(
            {
                "theta": p.theta,
                "phi": p.phi,
                "div_v": div_s(v, p),
                "curl_u": curl_s(u, p),
                "tangency_residual": abs(float(np.dot(v(r), r))),
            }
        )
    return rows


def diagnostics_csv(model, grid: np.ndarray | None = None) -> str:
    """CSV text of grid_diagnostics: header row, '.' decimals, LF line endings."""
    out = io.StringIO()
    out.write("theta,phi,div_v,curl_u,tangency_residual\n")
    for row in grid_diagnostics(model, grid):
        out.write(
            f"{row['theta']!r},{row['phi']!r},{row['div_v']!r},"
            f"{row['curl_u']!r},{row['tangency_residual']!r}\n"
        )
    return out.getvalue()
