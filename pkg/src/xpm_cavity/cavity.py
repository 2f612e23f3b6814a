"""Cross-phase modulation inside a symmetric two-mirror resonator.

The atoms sit at the cavity centre. The probe is lossless and picks up a
cross phase ``phi1`` on each rightward pass and ``phi2`` on each leftward
pass. The control is absorbed with single-pass optical depth ``x`` (the
detuned OD, ``OD / (1 + delta1^2)``) on every pass.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C
from .core import (ControlField, Detuning, LadderSystem, detuned_od, f_shape,
                   on_resonance_od, phi_max)

SMALL_PHASE = 0.1  # rad; above this the linearised cavity phase is flagged
VALIDITY_MARGIN = 10.0  # factor standing in for ">>" in asymptotic formulas


class ValidityWarning(UserWarning):
    """An asymptotic formula is used outside its regime of validity."""


class DivergenceError(ArithmeticError):
    """The multiple-reflection series does not converge."""


def finesse_from_reflectivity(R):
    return np.pi * np.sqrt(R) / (1 - R)


def reflectivity_for_finesse(F: float) -> float:
    """Mirror reflectivity with finesse ``F`` (inverse of pi sqrt(R)/(1-R))."""
    if F <= 0:
        return 0.0
    root_r = 2 * F / (math.pi + math.sqrt(math.pi**2 + 4 * F**2))
    return root_r**2


@dataclass(frozen=True)
class CavityConfig:
    """Identical mirrors of power reflectivity R, separated by ``length``.

    ``roundtrip_phase`` is k_c L (mod 2 pi); 0 puts the control on resonance.
    """

    reflectivity: float
    length: float = 1e-2
    roundtrip_phase: float = 0.0

    def __post_init__(self):
        if not 0 <= self.reflectivity < 1:
            raise ValueError(f"reflectivity must lie in [0, 1), got {self.reflectivity!r}")
        if not (math.isfinite(self.length) and self.length > 0):
            raise ValueError(f"cavity length must be > 0, got {self.length!r}")
        if not math.isfinite(self.roundtrip_phase):
            raise ValueError("roundtrip_phase must be finite")

    @property
    def finesse(self) -> float:
        return float(finesse_from_reflectivity(self.reflectivity))


@dataclass(frozen=True)
class PassPhases:
    """Cross phases on the rightward (phi1) and leftward (phi2) probe passes."""

    phi1: float
    phi2: float

    @property
    def small(self) -> bool:
        return abs(self.phi1) <= SMALL_PHASE and abs(self.phi2) <= SMALL_PHASE

    @property
    def total(self) -> float:
        return self.phi1 + self.phi2


@dataclass(frozen=True)
class CooperativityContext:
    mode_area: float  # m^2
    cross_section: float  # m^2, 3 lambda^2 / 2 pi

    def __post_init__(self):
        if not (self.mode_area > 0 and self.cross_section > 0):
            raise ValueError("mode_area and cross_section must be > 0")

    @property
    def free_space_cooperativity(self) -> float:
        return self.cross_section / (2 * self.mode_area)


def finesse(cfg: CavityConfig) -> float:
    return cfg.finesse


def output_amplitude(cfg: CavityConfig, propagation_phase: complex,
                     phases: PassPhases = PassPhases(0.0, 0.0)) -> complex:
    """Transmitted probe amplitude, summed over all round trips.

    ``propagation_phase`` is the one-pass phase; give it an imaginary part
    ``x / 2`` to model a field absorbed on every pass.
    """
    R = cfg.reflectivity
    ratio = R * cmath.exp(1j * (2 * propagation_phase + phases.total))
    if abs(ratio) >= 1:
        raise DivergenceError(f"round-trip gain |R e^(i(2d+phi1+phi2))| = {abs(ratio):.6g} >= 1")
    return (1 - R) * cmath.exp(1j * (propagation_phase + phases.phi1)) / (1 - ratio)


def phi_cavity_exact(cfg: CavityConfig, phases: PassPhases) -> float:
    """Nonlinear probe phase after the cavity (on probe resonance)."""
    R = cfg.reflectivity
    total = phases.total
    z = 1 - R * cmath.exp(1j * total)
    # z stays in the right half plane for R < 1, so the principal log of
    # z / conj(z) never meets its branch cut
    assert z.real > 0
    value = phases.phi1 + 0.5j * cmath.log(z / (1 - R * cmath.exp(-1j * total)))
    return value.real


def phi_cavity_linear(cfg: CavityConfig, phases: PassPhases) -> float:
    """Small-phase form (phi1 + R phi2) / (1 - R)."""
    if not phases.small:
        warnings.warn(f"pass phases ({phases.phi1:.3g}, {phases.phi2:.3g}) exceed "
                      f"{SMALL_PHASE} rad; linearised cavity phase is inaccurate",
                      ValidityWarning, stacklevel=2)
    R = cfg.reflectivity
    return (phases.phi1 + R * phases.phi2) / (1 - R)


def _one_minus_roundtrip(R, x):
    # 1 - R e^(-x) without cancellation as R -> 1, x -> 0
    return (1 - R) - R * np.expm1(-x)


def _airy_denominator(R, x, roundtrip_phase):
    return (_one_minus_roundtrip(R, x) ** 2
            + 4 * R * np.exp(-x) * np.sin(roundtrip_phase) ** 2)


def intracavity_intensities(cfg: CavityConfig, x):
    """Rightward and leftward control intensities at the cavity centre.

    Normalised to the input intensity. The rightward field has crossed half
    the medium; the leftward one has in addition made a full pass and one
    mirror reflection.
    """
    R = cfg.reflectivity
    right = (1 - R) * np.exp(-x / 2) / _airy_denominator(R, x, cfg.roundtrip_phase)
    left = R * np.exp(-x) * right
    return right, left


def pass_phases(cfg: CavityConfig, x: float, phi_single: float) -> PassPhases:
    """Pass phases set by the intracavity control intensities.

    The rightward probe pass sees the leftward-travelling control and vice
    versa.
    """
    right, left = intracavity_intensities(cfg, x)
    return PassPhases(phi1=float(left * phi_single), phi2=float(right * phi_single))


def alpha_factor(x, R):
    """Resonant enhancement of the single-pass cross phase.

    alpha = R e^(-x/2) (1 + e^(-x)) / (1 - R e^(-x))^2, i.e. the cavity phase
    over the single-pass phase when the control is on resonance.
    """
    return R * np.exp(-x / 2) * (1 + np.exp(-x)) / _one_minus_roundtrip(R, x) ** 2


def g_shape(delta1, delta2, od, R):
    """Cavity phase shape g(delta1, delta2; OD, R), array friendly.

    Equals ``alpha_factor(x, R) * f_shape(delta1, delta2, od)`` with
    ``x = od / (1 + delta1^2)``; unlike f it is not bounded by one.
    """
    delta1 = np.asarray(delta1, dtype=float)
    delta2 = np.asarray(delta2, dtype=float)
    x = detuned_od(od, delta1)
    cavity = R * np.exp(-x / 2) * -np.expm1(-2 * x) / _one_minus_roundtrip(R, x) ** 2
    numerator = delta1**2 * delta2 - 2 * delta1 - delta2
    return -cavity * numerator / ((1 + delta1**2) * (1 + delta2**2))


def g_factor(det: Detuning, od: float, R: float) -> float:
    return float(g_shape(det.delta1, det.delta2, od, R))


def g_via_alpha(det: Detuning, od: float, R: float) -> float:
    x = detuned_od(od, det.delta1)
    return float(alpha_factor(x, R) * f_shape(det.delta1, det.delta2, od))


@dataclass(frozen=True)
class AsymptoticOptimum:
    g: float
    detuning: Detuning
    valid: bool
    notes: tuple = ()


def g_max_asymptotic(od: float, R: float) -> AsymptoticOptimum:
    """High-finesse optimum: g = F/4pi at (sqrt(OD F/pi), -1).

    Valid when (F/pi) OD >> 1 and OD << delta1*^2; both are checked with a
    factor-of-ten margin and a :class:`ValidityWarning` is issued otherwise.
    """
    F = float(finesse_from_reflectivity(R))
    delta1 = math.sqrt(od * F / math.pi)
    notes = []
    if F / math.pi * od < VALIDITY_MARGIN:
        notes.append(f"(F/pi) OD = {F / math.pi * od:.3g} is not >> 1")
    if od * VALIDITY_MARGIN > delta1**2:
        notes.append(f"OD = {od:.3g} is not << delta1*^2 = {delta1**2:.3g}")
    if notes:
        warnings.warn("; ".join(notes), ValidityWarning, stacklevel=2)
    return AsymptoticOptimum(F / (4 * math.pi), Detuning(delta1, -1.0), not notes, tuple(notes))


def control_transmission(cfg: CavityConfig, x):
    """Control-beam power transmission through the absorbing cavity."""
    R = cfg.reflectivity
    return (1 - R) ** 2 * np.exp(-x) / _airy_denominator(R, x, cfg.roundtrip_phase)


def max_control_transmission(R, x):
    """Control transmission on cavity resonance."""
    return ((1 - R) / _one_minus_roundtrip(R, x)) ** 2 * np.exp(-x)


def od_cavity(R, x):
    """Cavity-effective optical depth, -ln of the resonant transmission."""
    return x + 2 * np.log(_one_minus_roundtrip(R, x) / (1 - R))


@dataclass(frozen=True)
class Tradeoff:
    epsilon: float
    transmission: float
    x: float
    g: float
    g_ratio: float  # g_eps / g_max
    delta1: float
    delta1_ratio: float  # delta1_eps / delta1*
    valid: bool


def transmission_tradeoff(epsilon: float, od: float, R: float) -> Tradeoff:
    """Cavity amplification left when the control transmission is 1 - epsilon.

    Uses the large-detuning expansion (x << 1, epsilon << 1): x = (1-R) eps/2,
    g_eps = eps F / 2pi, delta1_eps = sqrt((2/eps)(F/pi) OD).
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    F = float(finesse_from_reflectivity(R))
    x = (1 - R) * epsilon / 2
    g_eps = epsilon * F / (2 * math.pi)
    delta1 = math.sqrt((2 / epsilon) * (F / math.pi) * od)
    valid = epsilon <= 1 / VALIDITY_MARGIN and x <= 1 / VALIDITY_MARGIN
    if not valid:
        warnings.warn(f"epsilon = {epsilon:.3g} is not << 1; trade-off expansion is rough",
                      ValidityWarning, stacklevel=2)
    g_max = F / (4 * math.pi)
    delta1_star = math.sqrt(od * F / math.pi)
    return Tradeoff(epsilon, 1 - epsilon, x, g_eps, g_eps / g_max,
                    delta1, delta1 / delta1_star, valid)


def eta_on_resonance(ctx: CooperativityContext, F: float) -> float:
    """Single-atom cooperativity (4F/pi)(sigma / 2 A_m)."""
    return 4 * F / math.pi * ctx.free_space_cooperativity


def eta_effective(od, delta1, F):
    """Far-detuned effective cooperativity (F/pi) OD / (1 + delta1^2)."""
    return F / math.pi * od / (1 + np.square(delta1))


def eta_effective_from_atoms(ctx: CooperativityContext, F: float,
                             number_density: float, length: float, delta1: float) -> float:
    """Same as :func:`eta_effective`, built from the atom number in the mode."""
    atoms = number_density * ctx.mode_area * length
    return atoms / 2 * eta_on_resonance(ctx, F) / (1 + delta1**2)


@dataclass(frozen=True)
class BandwidthCheck:
    ok: bool
    margin: float  # L F 2 gamma1 / c, must be < 1


def cavity_bandwidth_check(sys: LadderSystem, cfg: CavityConfig) -> BandwidthCheck:
    """Cavity lifetime must stay below the intermediate-state lifetime: L F < c / 2 gamma1."""
    margin = cfg.length * cfg.finesse * 2 * sys.gamma1 / C
    return BandwidthCheck(margin < 1, margin)


def phi_cavity(sys: LadderSystem, field: ControlField, det: Detuning, R: float) -> float:
    """Resonant cavity cross phase phi_max * g, in the small-phase regime."""
    return phi_max(sys, field) * g_factor(det, on_resonance_od(sys), R)


def finesse_for_phase(target_phase: float, sys: LadderSystem, field: ControlField) -> float:
    """Finesse at which the asymptotic optimum (F/4pi) phi_max reaches ``target_phase``."""
    return 4 * math.pi * target_phase / phi_max(sys, field)
