"""The built-in nonlinear models and their closed-form solutions.

Three velocity fields on the Bloch sphere, each with the u-field that
generates it (v = u x r) and hence a state-dependent Hamiltonian
H = u(<sigma>) . sigma / 2:

* torsion:      v = 2gz e_z x r + 2B e_x x r   (z-rotation rate ~ height, plus x field)
* Morse-Smale:  v = 2g(-e_z + z r)             (source at north pole, sink at south)
* pitchfork:    v = 2gz(e_z - z r)             (both poles attract, equator repels)

The torsion model conserves E = B x + (g/2) z^2; the other two have sources
and sinks and conserve nothing. Gate times come from the height ODEs: a
complete elliptic integral for torsion, logarithms for the other two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .fields import TangentField, UField

_AGM_REL_TOL = 1e-15
_AGM_MAX_ITER = 60


class GateTime(NamedTuple):
    """Exact gate duration plus the large-n / small-eps logarithmic form.

    Solvers always use .exact; .approx exists to reproduce scaling claims.
    """

    exact: float
    approx: float


@dataclass(frozen=True)
class GatePlan:
    """One discrimination step: pre-rotation angle, evolution time, error budget."""

    model: str
    gamma: float
    t_gate: float
    eps: float | None = None

    def __post_init__(self):
        if not self.t_gate > 0.0:
            raise ValueError(f"gate time must be positive, got {self.t_gate!r}")
        if self.eps is not None and not (0.0 < self.eps < 1.0):
            raise ValueError(f"eps must be in (0, 1), got {self.eps!r}")


# ---------------------------------------------------------------------------
# complete elliptic integral of the first kind
# ---------------------------------------------------------------------------

def _agm_from_complement(kp: float) -> float:
    """pi / (2 * AGM(1, k')) where k' is the complementary modulus."""
    a, b = 1.0, kp
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= _AGM_REL_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def elliptic_K(k: float) -> float:
    """K(k) = int_0^{pi/2} dw / sqrt(1 - k^2 sin^2 w), by AGM iteration."""
    if not (0.0 <= k < 1.0):
        raise ValueError(f"modulus must satisfy 0 <= k < 1, got {k!r}")
    return _agm_from_complement(math.sqrt((1.0 - k) * (1.0 + k)))


def elliptic_K_from_complement(kp: float) -> float:
    """K with the complementary modulus k' = sqrt(1 - k^2) supplied directly.

    Needed when k is so close to 1 that forming it would round to 1.0
    (e.g. k = cos(theta/2) for theta ~ 2^-60).
    """
    if not (0.0 < kp <= 1.0):
        raise ValueError(f"complementary modulus must satisfy 0 < k' <= 1, got {kp!r}")
    return _agm_from_complement(kp)


def elliptic_K_imag(lam: float) -> float:
    """K(i*lam) for real lam >= 0, via K(i*lam) = K(lam/sqrt(1+lam^2)) / sqrt(1+lam^2)."""
    if lam < 0.0:
        raise ValueError(f"lam must be >= 0, got {lam!r}")
    if lam == 0.0:
        return 0.5 * math.pi
    h = math.hypot(1.0, lam)
    return elliptic_K(lam / h) / h


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

def _check_rate(g: float) -> None:
    if not g > 0.0:
        raise ValueError(f"rate g must be positive, got {g!r}")


@dataclass(frozen=True)
class TorsionModel:
    """H = B sx + g <sz> sz.  Kernel code 0 for the fast integrator path."""

    g: float
    B: float = 0.0
    kernel_code = 0

    def __post_init__(self):
        _check_rate(self.g)

    @property
    def label(self) -> str:
        return "torsion"

    def velocity(self, r: np.ndarray) -> np.ndarray:
        x, y, z = r
        return np.array(
            [-2.0 * self.g * z * y, 2.0 * self.g * x * z - 2.0 * self.B * z, 2.0 * self.B * y]
        )

    def u_field(self, r: np.ndarray) -> np.ndarray:
        z = r[2]
        return np.array([2.0 * self.B, 0.0, 2.0 * self.g * z])

    def energy(self, r: np.ndarray) -> float:
        # conserved along the flow; differs from <H> by -(g/2) z^2
        x, z = r[0], r[2]
        return self.B * x + 0.5 * self.g * z * z

    def tangent_field(self) -> TangentField:
        return TangentField(self.velocity, self.label)

    def u_field_def(self) -> UField:
        return UField(self.u_field, self.label, gauge="radial part 2g z^2 + 2B x")


@dataclass(frozen=True)
class MorseSmaleModel:
    """H = g(<sx> sy - <sy> sx); every state but |0> flows to |1>."""

    g: float
    kernel_code = 1

    def __post_init__(self):
        _check_rate(self.g)

    @property
    def label(self) -> str:
        return "morse-smale"

    def velocity(self, r: np.ndarray) -> np.ndarray:
        x, y, z = r
        return np.array([2.0 * self.g * x * z, 2.0 * self.g * y * z, 2.0 * self.g * (z * z - 1.0)])

    def u_field(self, r: np.ndarray) -> np.ndarray:
        x, y = r[0], r[1]
        return np.array([-2.0 * self.g * y, 2.0 * self.g * x, 0.0])

    def tangent_field(self) -> TangentField:
        return TangentField(self.velocity, self.label)

    def u_field_def(self) -> UField:
        return UField(self.u_field, self.label)


@dataclass(frozen=True)
class PitchforkModel:
    """H = g(<sy><sz> sx - <sx><sz> sy); bistable with the equator as separatrix."""

    g: float
    kernel_code = 2

    def __post_init__(self):
        _check_rate(self.g)

    @property
    def label(self) -> str:
        return "pitchfork"

    def velocity(self, r: np.ndarray) -> np.ndarray:
        x, y, z = r
        return np.array(
            [-2.0 * self.g * x * z * z, -2.0 * self.g * y * z * z, 2.0 * self.g * (z - z * z * z)]
        )

    def u_field(self, r: np.ndarray) -> np.ndarray:
        x, y, z = r
        return np.array([2.0 * self.g * y * z, -2.0 * self.g * x * z, 0.0])

    def tangent_field(self) -> TangentField:
        return TangentField(self.velocity, self.label)

    def u_field_def(self) -> UField:
        return UField(self.u_field, self.label)


@dataclass(frozen=True)
class LinearModel:
    """Uniform u-field: ordinary precession about a fixed axis (the linear case)."""

    ux: float
    uy: float
    uz: float

    @property
    def label(self) -> str:
        return "uniform"

    @property
    def g(self) -> float:
        # effective rate scale used for integrator step sizing
        return max(0.5 * math.sqrt(self.ux**2 + self.uy**2 + self.uz**2), 1e-300)

    def velocity(self, r: np.ndarray) -> np.ndarray:
        u = np.array([self.ux, self.uy, self.uz])
        return np.cross(u, np.asarray(r, dtype=float))

    def u_field(self, r: np.ndarray) -> np.ndarray:
        return np.array([self.ux, self.uy, self.uz])

    def energy(self, r: np.ndarray) -> float:
        # for uniform u the conserved energy is just <H> = u.r/2
        return 0.5 * (self.ux * r[0] + self.uy * r[1] + self.uz * r[2])

    def tangent_field(self) -> TangentField:
        return TangentField(self.velocity, self.label)

    def u_field_def(self) -> UField:
        return UField(self.u_field, self.label)


# ---------------------------------------------------------------------------
# torsion discrimination gate
# ---------------------------------------------------------------------------

def torsion_choose_B(theta1: float, g: float) -> float:
    """x-field strength (g/2) cos(theta1/2) that gives the straddling states the pole energy g/2."""
    _check_rate(g)
    if not (0.0 < theta1 < math.pi):
        raise ValueError(f"theta1 must be in (0, pi), got {theta1!r}")
    return 0.5 * g * math.cos(0.5 * theta1)


def torsion_trajectory_xy(theta1: float, z: float) -> tuple[float, float]:
    """(x, y^2) along the energy-g/2 torsion orbit, eliminated in favor of the height z.

    x = (1 - z^2)/cos(theta1/2),  y^2 = (1 - z^2)(z^2 - sin^2(theta1/2))/cos^2(theta1/2).
    """
    if not (0.0 < theta1 < math.pi):
        raise ValueError(f"theta1 must be in (0, pi), got {theta1!r}")
    c = math.cos(0.5 * theta1)
    s = math.sin(0.5 * theta1)
    if not (s - 1e-12 <= abs(z) <= 1.0 + 1e-12):
        raise ValueError(f"|z| must lie in [sin(theta1/2), 1], got {z!r}")
    x = (1.0 - z * z) / c
    y2 = max((1.0 - z * z) * (z * z - s * s), 0.0) / (c * c)
    return x, y2


def torsion_gate_time(theta1: float, g: float) -> GateTime:
    """Pole-to-pole discrimination time K(cos(theta1/2))/g, with the log(8/theta1)/g form.

    The modulus is exponentially close to 1 for small theta1, so K is
    evaluated from the complementary modulus sin(theta1/2) directly.
    """
    _check_rate(g)
    if not (0.0 < theta1 < math.pi):
        raise ValueError(f"theta1 must be in (0, pi), got {theta1!r}")
    exact = elliptic_K_from_complement(math.sin(0.5 * theta1)) / g
    approx = math.log(8.0 / theta1) / g
    return GateTime(exact, approx)


# ---------------------------------------------------------------------------
# Morse-Smale heights and gate time
# ---------------------------------------------------------------------------

def morse_smale_height(z0: float, t: float, g: float) -> float:
    """Closed-form height under dz/dt = 2g(z^2 - 1).

    Evaluated as the hyperbolic-tangent Moebius form, which is equivalent to
    the exponential form but cannot overflow and is exact at z0 = +/-1.
    """
    _check_rate(g)
    if not (-1.0 <= z0 <= 1.0):
        raise ValueError(f"z0 must be in [-1, 1], got {z0!r}")
    th = math.tanh(2.0 * g * t)
    return (z0 - th) / (1.0 - z0 * th)


def morse_smale_gate_time(n: int, eps: float, g: float) -> GateTime:
    """Time for the closest satisfiable state to sink to z = -1 + eps.

    exact  = (1/4g) log[(2 - eps)(1 - 2^-2n) / (2^-2n eps)]
    approx = (1/4g) log[2^(2n+1) / eps]
    """
    _check_rate(g)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must be in (0, 1), got {eps!r}")
    q = 2.0 ** (-2 * n)
    exact = math.log((2.0 - eps) * (1.0 - q) / (q * eps)) / (4.0 * g)
    approx = ((2 * n + 1) * math.log(2.0) + math.log(1.0 / eps)) / (4.0 * g)
    return GateTime(exact, approx)


# ---------------------------------------------------------------------------
# pitchfork heights and gate time
# ---------------------------------------------------------------------------

def pitchfork_height(z0: float, t: float, g: float) -> float:
    """Closed-form height under dz/dt = 2gz(1 - z^2); odd in z0, separatrix at 0."""
    _check_rate(g)
    if not (-1.0 <= z0 <= 1.0):
        raise ValueError(f"z0 must be in [-1, 1], got {z0!r}")
    if z0 == 0.0:
        return 0.0
    # equivalent to (1 + (z0^-2 - 1) e^{-4gt})^{-1/2} but safe for tiny z0
    decay = math.exp(-4.0 * g * t)
    return z0 / math.sqrt(z0 * z0 + (1.0 - z0 * z0) * decay)


def pitchfork_gate_time(z_i: float, eps: float, g: float) -> float:
    """(1/2g) log(1 / (sqrt(2 eps) z_i)): time to carry |z| from z_i to about 1 - eps."""
    _check_rate(g)
    if not (0.0 < z_i < 1.0):
        raise ValueError(f"z_i must be in (0, 1), got {z_i!r}")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must be in (0, 1), got {eps!r}")
    return math.log(1.0 / (math.sqrt(2.0 * eps) * z_i)) / (2.0 * g)
