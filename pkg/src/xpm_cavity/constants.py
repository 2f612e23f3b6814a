"""Physical constants (CODATA, via scipy) and display-unit conversions."""

import scipy.constants as _const

EPS0 = _const.epsilon_0
HBAR = _const.hbar
C = _const.c

# 1 nW/um^2 = 1e-9 W / 1e-12 m^2
W_PER_M2_PER_NW_PER_UM2 = 1.0e3
MRAD_PER_RAD = 1.0e3


def intensity_to_display(intensity_si):
    """W/m^2 -> nW/um^2."""
    return intensity_si / W_PER_M2_PER_NW_PER_UM2


def intensity_from_display(intensity_nw_um2):
    """nW/um^2 -> W/m^2."""
    return intensity_nw_um2 * W_PER_M2_PER_NW_PER_UM2


def phase_per_intensity_to_display(rad_per_w_m2):
    """rad/(W/m^2) -> rad/(nW/um^2)."""
    return rad_per_w_m2 * W_PER_M2_PER_NW_PER_UM2


def phase_per_intensity_from_display(rad_per_nw_um2):
    """rad/(nW/um^2) -> rad/(W/m^2)."""
    return rad_per_nw_um2 / W_PER_M2_PER_NW_PER_UM2


def rad_to_mrad(phase):
    return phase * MRAD_PER_RAD


def mrad_to_rad(phase_mrad):
    return phase_mrad / MRAD_PER_RAD
