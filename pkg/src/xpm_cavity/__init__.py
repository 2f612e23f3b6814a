"""Cavity-enhanced cross-phase modulation in an atomic ladder system."""

from .cavity import (CavityConfig, CooperativityContext, PassPhases, alpha_factor,
                     control_transmission, finesse, g_factor, g_max_asymptotic,
                     g_shape, od_cavity, output_amplitude, phi_cavity_exact,
                     phi_cavity_linear)
from .core import (ControlField, Detuning, LadderSystem, chi3, f_factor, f_shape,
                   on_resonance_od, phi_max, phi_nc, phi_per_photon)
from .optimizer import (ExtremumResult, SweepTable, find_far_detuned_min_f,
                        maximize_f, maximize_g)
from .presets import load_preset

__version__ = "0.1.0"
