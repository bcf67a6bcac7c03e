"""Geometric primitives shared by the whole package.

Angle convention (spherical coordinates): ``theta`` is the zenith angle in
radians measured down from the +z axis -- **not** elevation above the
horizon -- so ``theta = 0`` points straight up and ``theta = pi/2`` lies in
the horizontal x-y plane.  ``phi`` is the azimuth in radians measured from
+x toward +y.  Angles are always stored normalized: theta in [0, pi], phi
in [-pi, pi).

Everything is SI: positions in meters, velocities in m/s, frequencies in
Hz, delays in seconds, phases in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np

from .errors import InvalidParameterError

#: Speed of light in vacuum, m/s (exact by definition).
SPEED_OF_LIGHT = 299_792_458.0

_TWO_PI = 2.0 * math.pi


def _normalize_angles(theta: float, phi: float) -> Tuple[float, float]:
    """Map an arbitrary (theta, phi) pair onto theta in [0, pi], phi in [-pi, pi).

    Zenith angles outside [0, pi] are folded back across the poles, which
    flips the azimuth by pi; the azimuth is then wrapped into [-pi, pi).
    """
    theta = math.remainder(theta, _TWO_PI)  # (-pi, pi]
    if theta < 0.0:
        theta = -theta
        phi = phi + math.pi
    phi = math.remainder(phi, _TWO_PI)
    if phi >= math.pi:  # remainder returns (-pi, pi]; fold pi to -pi
        phi -= _TWO_PI
    return theta, phi


@dataclass(frozen=True)
class Angles:
    """A direction on the sphere: zenith ``theta`` and azimuth ``phi`` (radians).

    Out-of-range inputs are normalized on construction, so two ``Angles``
    describing the same physical direction compare equal.
    """

    theta: float
    phi: float

    def __post_init__(self):
        theta, phi = _normalize_angles(float(self.theta), float(self.phi))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


def direction_unit_vector(angles: Angles) -> np.ndarray:
    """Unit vector (x, y, z) for a spherical direction.

    Components are (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
    """
    st = math.sin(angles.theta)
    return np.array(
        [st * math.cos(angles.phi), st * math.sin(angles.phi), math.cos(angles.theta)]
    )


def direction_unit_vectors(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Vectorized :func:`direction_unit_vector`: (n,) angles -> (n, 3) rows."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.column_stack((st * np.cos(phi), st * np.sin(phi), np.cos(theta)))


def wavenumber(f0: float) -> float:
    """Free-space wavenumber 2*pi*f0/c for a carrier frequency in Hz."""
    if f0 <= 0.0:
        raise InvalidParameterError(f"carrier frequency must be positive, got {f0}")
    return _TWO_PI * f0 / SPEED_OF_LIGHT


def doppler_coefficient(
    arrival: Angles,
    departure: Angles,
    v_rx: np.ndarray,
    v_tx: np.ndarray,
) -> float:
    """Effective closing speed (m/s) of one propagation path.

    Projects the receive velocity onto the arrival direction and the
    transmit velocity onto the departure direction and adds the two.  The
    corresponding angular phase rate is ``wavenumber(f0) * result``.
    """
    a = direction_unit_vector(arrival)
    d = direction_unit_vector(departure)
    return float(a @ np.asarray(v_rx, dtype=float) + d @ np.asarray(v_tx, dtype=float))


@dataclass(frozen=True)
class Subpath:
    """One resolvable propagation path of a link.

    ``power`` is linear (not dB) and ``phase`` is the path's random initial
    phase in radians, stored wrapped into [0, 2*pi).
    """

    power: float
    delay: float
    phase: float
    arrival: Angles
    departure: Angles

    def __post_init__(self):
        if self.power < 0.0:
            raise InvalidParameterError(f"subpath power must be >= 0, got {self.power}")
        if self.delay < 0.0:
            raise InvalidParameterError(f"subpath delay must be >= 0, got {self.delay}")
        object.__setattr__(self, "phase", float(self.phase) % _TWO_PI)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LinkMultipath:
    """Static multipath description of one transmitter-receiver link.

    Holds the carrier frequency, both terminal velocities, and the full set
    of subpaths.  The per-subpath columns are exposed as cached, read-only
    arrays so the channel engines can work vectorized without re-marshalling
    on every call.
    """

    f0: float
    subpaths: Tuple[Subpath, ...]
    v_tx: np.ndarray = field(default_factory=lambda: np.zeros(3))
    v_rx: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        if self.f0 <= 0.0:
            raise InvalidParameterError(
                f"carrier frequency must be positive, got {self.f0}"
            )
        subpaths = tuple(self.subpaths)
        if not subpaths:
            raise InvalidParameterError("a link needs at least one subpath")
        object.__setattr__(self, "subpaths", subpaths)
        for name in ("v_tx", "v_rx"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise InvalidParameterError(
                    f"{name} must be a 3-vector, got shape {v.shape}"
                )
            object.__setattr__(self, name, _readonly(v.copy()))

    @property
    def n_subpaths(self) -> int:
        return len(self.subpaths)

    @cached_property
    def powers(self) -> np.ndarray:
        return _readonly(np.array([s.power for s in self.subpaths]))

    @cached_property
    def delays(self) -> np.ndarray:
        return _readonly(np.array([s.delay for s in self.subpaths]))

    @cached_property
    def phases(self) -> np.ndarray:
        return _readonly(np.array([s.phase for s in self.subpaths]))

    @cached_property
    def arrival_theta(self) -> np.ndarray:
        return _readonly(np.array([s.arrival.theta for s in self.subpaths]))

    @cached_property
    def arrival_phi(self) -> np.ndarray:
        return _readonly(np.array([s.arrival.phi for s in self.subpaths]))

    @cached_property
    def departure_theta(self) -> np.ndarray:
        return _readonly(np.array([s.departure.theta for s in self.subpaths]))

    @cached_property
    def departure_phi(self) -> np.ndarray:
        return _readonly(np.array([s.departure.phi for s in self.subpaths]))

    @cached_property
    def arrival_directions(self) -> np.ndarray:
        """(n_subpaths, 3) arrival unit vectors."""
        return _readonly(direction_unit_vectors(self.arrival_theta, self.arrival_phi))

    @cached_property
    def departure_directions(self) -> np.ndarray:
        """(n_subpaths, 3) departure unit vectors."""
        return _readonly(
            direction_unit_vectors(self.departure_theta, self.departure_phi)
        )

    @cached_property
    def doppler_coefficients(self) -> np.ndarray:
        """Per-subpath closing speeds in m/s (see :func:`doppler_coefficient`)."""
        nu = self.arrival_directions @ self.v_rx + self.departure_directions @ self.v_tx
        return _readonly(nu)
