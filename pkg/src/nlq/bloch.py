"""Pure-state geometry on the Bloch sphere.

Coordinates, y-rotations, Euclidean state distance, and the family of
solution-count states |psi_s> = cos(theta_s/2)|0> + sin(theta_s/2)|1> with
theta_s = 2*arctan(s / (2^n - s)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Norm slack allowed on user-supplied vectors vs. vectors we produce ourselves.
INPUT_NORM_TOL = 1e-9
INTERNAL_NORM_TOL = 1e-12

# s and 2^n are kept in 64-bit integer range so the (s, 2^n - s) pair converts
# to float without surprises; this caps analytic-mode bit counts.
MAX_ANALYTIC_BITS = 62


@dataclass(frozen=True)
class BlochVector:
    """A unit 3-vector (x, y, z); pure qubit states only."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(n - 1.0) > INPUT_NORM_TOL:
            raise ValueError(f"Bloch vector norm {n!r} is not 1 within {INPUT_NORM_TOL}")

    @classmethod
    def from_array(cls, arr) -> "BlochVector":
        x, y, z = (float(v) for v in arr)
        return cls(x, y, z)

    def to_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True)
class SphericalPoint:
    """Polar angle theta in [0, pi], azimuth phi normalized to [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (-1e-12 <= self.theta <= math.pi + 1e-12):
            raise ValueError(f"theta {self.theta!r} outside [0, pi]")
        object.__setattr__(self, "theta", min(max(self.theta, 0.0), math.pi))
        object.__setattr__(self, "phi", self.phi % (2.0 * math.pi))


def as_unit_array(r, tol: float = INPUT_NORM_TOL) -> np.ndarray:
    """Coerce a BlochVector / sequence / array to a validated float (3,) array."""
    if isinstance(r, BlochVector):
        return r.to_array()
    arr = np.asarray(r, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    n = float(np.linalg.norm(arr))
    if abs(n - 1.0) > tol:
        raise ValueError(f"vector norm {n!r} is not 1 within {tol}")
    return arr


def spherical_to_bloch(p: SphericalPoint) -> BlochVector:
    st = math.sin(p.theta)
    return BlochVector(st * math.cos(p.phi), st * math.sin(p.phi), math.cos(p.theta))


def bloch_to_spherical(r: BlochVector) -> SphericalPoint:
    """Inverse of spherical_to_bloch away from the poles; phi := 0 at the poles."""
    theta = math.acos(min(max(r.z, -1.0), 1.0))
    if math.hypot(r.x, r.y) < 1e-15:
        return SphericalPoint(theta, 0.0)
    return SphericalPoint(theta, math.atan2(r.y, r.x))


def _check_sn(s: int, n: int) -> None:
    if not isinstance(s, int) or not isinstance(n, int):
        raise ValueError("s and n must be integers")
    if n < 1 or n > MAX_ANALYTIC_BITS:
        raise ValueError(f"n must be in 1..{MAX_ANALYTIC_BITS}, got {n}")
    if not (0 <= s <= 2**n):
        raise ValueError(f"s must be in 0..2^{n}, got {s}")


def theta_of_s(s: int, n: int) -> float:
    """Polar angle of the count-s state: 2*arctan(s / (2^n - s)), with theta = pi at s = 2^n.

    Uses the two-argument arctangent on the exact integer pair so small
    angles stay accurate to machine precision.
    """
    _check_sn(s, n)
    return 2.0 * math.atan2(s, 2**n - s)


@dataclass(frozen=True)
class EncodedState:
    """The ancilla state prepared for a formula with s of 2^n assignments satisfying."""

    s: int
    n: int
    theta_s: float
    bloch: BlochVector

    @property
    def amplitudes(self) -> np.ndarray:
        """Real amplitude pair proportional to (2^n - s, s)."""
        h = math.hypot(2**self.n - self.s, self.s)
        return np.array([(2**self.n - self.s) / h, self.s / h], dtype=float)


def encode_state(s: int, n: int) -> EncodedState:
    _check_sn(s, n)
    theta = theta_of_s(s, n)
    h = math.hypot(2**n - s, s)
    a0 = (2**n - s) / h
    a1 = s / h
    # identical to (sin theta, 0, cos theta) but exact at the endpoints
    bloch = BlochVector(2.0 * a0 * a1, 0.0, a0 * a0 - a1 * a1)
    return EncodedState(s=s, n=n, theta_s=theta, bloch=bloch)


def rotate_y(r: BlochVector, gamma: float) -> BlochVector:
    """Rotate about the y axis in the sense mapping (0,0,1) to (sin g, 0, cos g)."""
    c, s = math.cos(gamma), math.sin(gamma)
    return BlochVector(c * r.x + s * r.z, r.y, -s * r.x + c * r.z)


def bloch_distance(a: BlochVector, b: BlochVector) -> float:
    """Euclidean distance |a - b|; 0 iff identical, 2 for antipodal states."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def bloch_from_statevector(psi) -> BlochVector:
    """Expectation values (<sx>, <sy>, <sz>) of a normalized 2-component state."""
    a, b = complex(psi[0]), complex(psi[1])
    nrm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if abs(nrm - 1.0) > INPUT_NORM_TOL:
        raise ValueError(f"state norm {nrm!r} is not 1 within {INPUT_NORM_TOL}")
    cross = a.conjugate() * b
    return BlochVector(2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2)


def statevector_from_bloch(r: BlochVector) -> np.ndarray:
    """A representative 2-component state (global phase fixed: first amplitude real >= 0)."""
    p = bloch_to_spherical(r)
    return np.array(
        [math.cos(p.theta / 2.0), math.sin(p.theta / 2.0) * complex(math.cos(p.phi), math.sin(p.phi))],
        dtype=complex,
    )
