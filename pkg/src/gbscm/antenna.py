"""Antenna element patterns and array geometry.

Patterns return *amplitude* gains (linear field gain, not power or dB); the
channel engines square nothing on their own.  Each pattern exposes
``gain(theta, phi)`` accepting scalars or 1-d arrays of zenith/azimuth
angles in radians and broadcasting them together.

Arrays are plain element-position lists (meters, rows of (x, y, z)) plus a
shared element pattern.  ``make_ula`` / ``make_upa`` build the two standard
layouts from a spacing expressed in wavelengths of a design frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import InvalidParameterError
from .geometry import (
    SPEED_OF_LIGHT,
    Angles,
    direction_unit_vector,
    direction_unit_vectors,
)


def _broadcast_angles(theta, phi):
    """Broadcast-angle helper: returns float arrays plus a scalar flag."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    scalar = theta.ndim == 0 and phi.ndim == 0
    theta, phi = np.broadcast_arrays(theta, phi)
    return theta, phi, scalar


def _maybe_scalar(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


@dataclass(frozen=True)
class IsotropicPattern:
    """Unit amplitude gain in every direction."""

    def gain(self, theta, phi):
        theta, _, scalar = _broadcast_angles(theta, phi)
        return _maybe_scalar(np.ones_like(theta), scalar)


@dataclass(frozen=True)
class CosinePowerPattern:
    """Gain cos(angle-from-boresight)**exponent in the front hemisphere, 0 behind.

    A soft directional element: ``exponent`` controls beamwidth (larger is
    narrower), ``boresight`` points the beam, ``peak_amplitude`` scales the
    on-axis gain.
    """

    exponent: float = 1.0
    boresight: Angles = field(default_factory=lambda: Angles(math.pi / 2, 0.0))
    peak_amplitude: float = 1.0

    def __post_init__(self):
        if self.exponent <= 0.0:
            raise InvalidParameterError(
                f"cosine pattern exponent must be > 0, got {self.exponent}"
            )
        if self.peak_amplitude <= 0.0:
            raise InvalidParameterError(
                f"peak amplitude must be > 0, got {self.peak_amplitude}"
            )

    def gain(self, theta, phi):
        theta, phi, scalar = _broadcast_angles(theta, phi)
        shape = theta.shape
        units = direction_unit_vectors(theta.ravel(), phi.ravel())
        cos_off = units @ direction_unit_vector(self.boresight)
        g = self.peak_amplitude * np.maximum(cos_off, 0.0) ** self.exponent
        return _maybe_scalar(g.reshape(shape), scalar)


@dataclass(frozen=True)
class SectorPattern:
    """Parabolic-in-dB sector element, boresight at the horizon along +x.

    Attenuation in dB is ``12 * (offset / beamwidth)**2`` per plane (azimuth
    offset from 0, zenith offset from 90 degrees), each plane and the sum
    clipped at ``max_attenuation_db``.  At an offset of half the beamwidth
    the single-plane loss is exactly 3 dB.  Beamwidths are in degrees.
    """

    az_beamwidth_deg: float = 65.0
    el_beamwidth_deg: float = 65.0
    max_attenuation_db: float = 30.0
    peak_amplitude: float = 1.0

    def __post_init__(self):
        if self.az_beamwidth_deg <= 0.0 or self.el_beamwidth_deg <= 0.0:
            raise InvalidParameterError("sector beamwidths must be > 0 degrees")
        if self.max_attenuation_db <= 0.0:
            raise InvalidParameterError(
                f"max attenuation must be > 0 dB, got {self.max_attenuation_db}"
            )
        if self.peak_amplitude <= 0.0:
            raise InvalidParameterError(
                f"peak amplitude must be > 0, got {self.peak_amplitude}"
            )

    def gain(self, theta, phi):
        theta, phi, scalar = _broadcast_angles(theta, phi)
        az_off = np.degrees((phi + math.pi) % (2.0 * math.pi) - math.pi)
        zen_off = np.degrees(theta) - 90.0
        a = self.max_attenuation_db
        az_db = np.minimum(12.0 * (az_off / self.az_beamwidth_deg) ** 2, a)
        el_db = np.minimum(12.0 * (zen_off / self.el_beamwidth_deg) ** 2, a)
        total_db = np.minimum(az_db + el_db, a)
        g = self.peak_amplitude * 10.0 ** (-total_db / 20.0)
        return _maybe_scalar(g, scalar)


ElementPattern = Union[IsotropicPattern, CosinePowerPattern, SectorPattern]


@dataclass(frozen=True)
class PolarizedPattern:
    """A pair of scalar patterns, one per polarization component.

    ``vertical`` and ``horizontal`` are the field-gain patterns of the
    element's two polarization ports; the dual-polarized channel engine
    consumes these, the scalar engine rejects them.
    """

    vertical: ElementPattern
    horizontal: ElementPattern


@dataclass(frozen=True, eq=False)
class ArrayDescriptor:
    """Element positions (meters) plus the shared element pattern.

    ``design_f0`` records the carrier the spacing was chosen for when the
    array was built by :func:`make_ula` / :func:`make_upa`; the engines
    refuse to pair such an array with a link at a different carrier, which
    catches silently mis-scaled geometry.  Hand-built arrays may leave it
    ``None`` to opt out of that check.
    """

    positions: np.ndarray
    pattern: Union[ElementPattern, PolarizedPattern] = field(
        default_factory=IsotropicPattern
    )
    design_f0: Optional[float] = None

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] < 1:
            raise InvalidParameterError(
                f"positions must be an (n, 3) array with n >= 1, got shape {pos.shape}"
            )
        pos = pos.copy()
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        if self.design_f0 is not None and self.design_f0 <= 0.0:
            raise InvalidParameterError(
                f"design carrier must be positive, got {self.design_f0}"
            )

    @property
    def n_elements(self) -> int:
        return self.positions.shape[0]


def _check_spacing(spacing_wavelengths: float, f0: float) -> float:
    if spacing_wavelengths <= 0.0:
        raise InvalidParameterError(
            f"element spacing must be positive, got {spacing_wavelengths} wavelengths"
        )
    if f0 <= 0.0:
        raise InvalidParameterError(f"carrier frequency must be positive, got {f0}")
    return spacing_wavelengths * SPEED_OF_LIGHT / f0


def make_ula(
    count: int,
    spacing_wavelengths: float,
    f0: float,
    axis=(0.0, 1.0, 0.0),
    pattern=None,
) -> ArrayDescriptor:
    """Uniform linear array centered on the origin.

    Elements sit at ``(i - (count-1)/2) * spacing`` along ``axis`` (a unit
    vector), with the spacing converted from wavelengths at ``f0`` to
    meters.  Two elements a half-wavelength apart therefore land at
    -lambda/4 and +lambda/4.
    """
    if count < 1:
        raise InvalidParameterError(f"element count must be >= 1, got {count}")
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,):
        raise InvalidParameterError(f"axis must be a 3-vector, got shape {axis.shape}")
    if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
        raise InvalidParameterError("axis must be a unit vector")
    step = _check_spacing(spacing_wavelengths, f0)
    offsets = (np.arange(count) - (count - 1) / 2.0) * step
    positions = offsets[:, None] * axis[None, :]
    return ArrayDescriptor(
        positions, pattern if pattern is not None else IsotropicPattern(), f0
    )


def make_upa(
    rows: int,
    cols: int,
    spacing_wavelengths: float,
    f0: float,
    pattern=None,
) -> ArrayDescriptor:
    """Uniform planar array in the y-z plane, centered on the origin.

    Element (r, c) maps to flat index ``r * cols + c`` and sits at
    ``y = (c - (cols-1)/2) * spacing``, ``z = (r - (rows-1)/2) * spacing``,
    x = 0, so the array broadside points along +x.
    """
    if rows < 1 or cols < 1:
        raise InvalidParameterError(
            f"grid dimensions must be >= 1, got rows={rows}, cols={cols}"
        )
    step = _check_spacing(spacing_wavelengths, f0)
    r_idx, c_idx = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    y = (c_idx.ravel() - (cols - 1) / 2.0) * step
    z = (r_idx.ravel() - (rows - 1) / 2.0) * step
    positions = np.column_stack((np.zeros(rows * cols), y, z))
    return ArrayDescriptor(
        positions, pattern if pattern is not None else IsotropicPattern(), f0
    )
