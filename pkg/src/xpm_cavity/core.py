"""Single-pass cross-phase modulation in a three-level ladder system.

The control beam drives the ground -> intermediate transition, the probe the
intermediate -> upper one. Everything is in SI units; detunings are
dimensionless (single-photon detuning over gamma1, two-photon detuning over
gamma2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C, EPS0, HBAR


@dataclass(frozen=True)
class LadderSystem:
    """Atomic and laser parameters of the two-step ladder."""

    mu1: float  # C m, lower transition
    mu2: float  # C m, upper transition
    gamma1: float  # rad/s, intermediate-state population decay
    gamma2: float  # rad/s, upper-state population decay
    lambda_c: float  # m, control wavelength
    lambda_p: float  # m, probe wavelength
    number_density: float  # atoms/m^3
    length: float  # m, interaction length

    def __post_init__(self):
        for name in ("mu1", "mu2", "gamma1", "gamma2", "lambda_c", "lambda_p",
                     "number_density", "length"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"LadderSystem.{name} must be finite and > 0, got {value!r}")

    @property
    def k_c(self) -> float:
        return 2 * math.pi / self.lambda_c

    @property
    def k_p(self) -> float:
        return 2 * math.pi / self.lambda_p


@dataclass(frozen=True)
class Detuning:
    """Relative detunings: delta1 = Delta1/gamma1, delta2 = Delta2/gamma2."""

    delta1: float
    delta2: float

    def __post_init__(self):
        if not (math.isfinite(self.delta1) and math.isfinite(self.delta2)):
            raise ValueError(f"detunings must be finite, got ({self.delta1!r}, {self.delta2!r})")

    def __neg__(self) -> Detuning:
        return Detuning(-self.delta1, -self.delta2)


@dataclass(frozen=True)
class ControlField:
    intensity: float  # W/m^2, input intensity of the collimated control beam

    def __post_init__(self):
        if not (math.isfinite(self.intensity) and self.intensity >= 0):
            raise ValueError(f"control intensity must be finite and >= 0, got {self.intensity!r}")


def chi3(sys: LadderSystem, det: Detuning) -> complex:
    """Third-order cross susceptibility of the ladder, in m^2/V^2."""
    prefactor = sys.number_density * sys.mu1**2 * sys.mu2**2 / (
        EPS0 * HBAR**3 * sys.gamma1**2 * sys.gamma2)
    return -prefactor / ((1j + det.delta1) ** 2 * (1j + det.delta2))


def kerr_index(sys: LadderSystem, det: Detuning, n0: float = 1.0) -> float:
    """Cross nonlinear index n2 = 3 Re(chi3) / (2 n0^2 eps0 c), in m^2/W.

    ``n0`` defaults to 1 (dilute vapour).
    """
    return 3 * chi3(sys, det).real / (2 * n0**2 * EPS0 * C)


def natural_dipole_moment(gamma: float, wavelength: float) -> float:
    """Dipole moment consistent with a radiative decay rate.

    Inverts gamma = w^3 mu^2 / (6 pi eps0 hbar c^3); this is the convention
    under which the two forms of the on-resonance OD coincide.
    """
    omega = 2 * math.pi * C / wavelength
    return math.sqrt(6 * math.pi * EPS0 * HBAR * C**3 * gamma / omega**3)


def on_resonance_od(sys: LadderSystem) -> float:
    """On-resonance optical depth of the control beam, 3 N d lambda_c^2 / 2 pi."""
    return 3 * sys.number_density * sys.length * sys.lambda_c**2 / (2 * math.pi)


def on_resonance_od_from_dipole(sys: LadderSystem, mu1: float | None = None) -> float:
    """Dipole form k_c N mu1^2 d / (hbar eps0 gamma1).

    Agrees with :func:`on_resonance_od` only if ``mu1`` is the natural dipole
    moment for ``gamma1``; pass ``mu1=natural_dipole_moment(...)`` to check.
    """
    mu = sys.mu1 if mu1 is None else mu1
    return sys.k_c * sys.number_density * mu**2 * sys.length / (HBAR * EPS0 * sys.gamma1)


def number_density_for_od(od: float, length: float, lambda_c: float) -> float:
    """Atomic density giving on-resonance optical depth ``od`` over ``length``."""
    return 2 * math.pi * od / (3 * length * lambda_c**2)


def detuned_od(od, delta1):
    """Single-pass optical depth at detuning delta1: od / (1 + delta1^2)."""
    return od / (1 + np.square(delta1))


def od_detuned(od: float, det: Detuning) -> float:
    return float(detuned_od(od, det.delta1))


def shape_numerator(delta1, delta2):
    # real part of -1/((i+d1)^2 (i+d2)) times (1+d1^2)^2 (1+d2^2)
    return -delta1**2 * delta2 + 2 * delta1 + delta2


def f_shape(delta1, delta2, od):
    """Single-pass phase shape f(delta1, delta2; OD), array friendly.

    ``|f| <= 1`` everywhere and ``f(-d1, -d2) == -f(d1, d2)``.
    """
    delta1 = np.asarray(delta1, dtype=float)
    delta2 = np.asarray(delta2, dtype=float)
    absorbed = -np.expm1(-detuned_od(od, delta1))
    return absorbed * shape_numerator(delta1, delta2) / (
        (1 + delta1**2) * (1 + delta2**2))


def f_factor(det: Detuning, od: float) -> float:
    return float(f_shape(det.delta1, det.delta2, od))


def phi_max_per_intensity(sys: LadderSystem) -> float:
    """Maximum single-pass cross phase per unit control intensity, rad/(W/m^2)."""
    return (3 * sys.mu2**2 / (2 * EPS0 * C * HBAR**2 * sys.gamma1 * sys.gamma2)
            * (sys.lambda_c / sys.lambda_p))


def phi_max(sys: LadderSystem, field: ControlField) -> float:
    """Largest cross phase one pass of the control beam can write on the probe."""
    return phi_max_per_intensity(sys) * field.intensity


def phi_nc(sys: LadderSystem, field: ControlField, det: Detuning) -> float:
    """Single-pass (no cavity) cross phase on the probe."""
    return phi_max(sys, field) * f_factor(det, on_resonance_od(sys))


def atomic_cross_section(wavelength: float) -> float:
    return 3 * wavelength**2 / (2 * math.pi)


def single_photon_intensity(sys: LadderSystem) -> float:
    """One control photon per cross section per two-photon lifetime, W/m^2."""
    return 2 * math.pi * HBAR * C * sys.gamma2 / (
        sys.lambda_c * atomic_cross_section(sys.lambda_c))


def phi_per_photon(sys: LadderSystem) -> float:
    """Average cross phase per control photon per atomic cross section, rad."""
    return 2 * math.pi**2 * sys.mu2**2 / (
        EPS0 * HBAR * sys.gamma1 * sys.lambda_p * sys.lambda_c**2)


def phi_per_photon_via_intensity(sys: LadderSystem) -> float:
    """Same quantity as :func:`phi_per_photon`, through phi_max at one photon."""
    return phi_max(sys, ControlField(single_photon_intensity(sys)))


def transmission_single_pass(od: float, det: Detuning) -> float:
    """Control-beam transmission exp(-OD_NC) through the medium."""
    return math.exp(-od_detuned(od, det))
