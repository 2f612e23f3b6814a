#!/usr/bin/env python3
"""Rb ladder numbers, free space and in a cavity, at 10 W/m^2 of control light.

Prints the single-pass phase scales, the optimum detunings at a few optical
depths, and the cavity enhancement (numerical optimum against the
large-detuning asymptote) for a range of mirror reflectivities.
"""

import math
import warnings

from xpm_cavity.cavity import (ValidityWarning, CavityConfig,
                               cavity_bandwidth_check, finesse_for_phase,
                               finesse_from_reflectivity, g_max_asymptotic,
                               max_control_transmission,
                               reflectivity_for_finesse)
from xpm_cavity.constants import phase_per_intensity_to_display, rad_to_mrad
from xpm_cavity.core import (ControlField, detuned_od, phi_max,
                             phi_max_per_intensity, phi_per_photon)
from xpm_cavity.optimizer import maximize_f, maximize_g
from xpm_cavity.presets import load_preset

I0 = 10.0  # W/m^2


def main():
    rb = load_preset("rb87")
    field = ControlField(I0)
    print("single pass")
    print(f"  phi_max / I0   {phase_per_intensity_to_display(phi_max_per_intensity(rb)):8.3f} rad/(nW/um^2)")
    print(f"  phi_max        {phi_max(rb, field):8.4f} rad at I0 = {I0:g} W/m^2")
    print(f"  phi per photon {rad_to_mrad(phi_per_photon(rb)):8.2f} mrad")

    print("\n  OD      f_max   delta1*  delta2*  transmission")
    for od in (0.3, 1, 3, 15, 100):
        r = maximize_f(od)
        print(f"  {od:<6g} {r.value:7.4f} {r.location.delta1:8.4f} {r.location.delta2:8.4f}  {r.transmission:.3e}")

    od = 1.0
    print(f"\ncavity, OD = {od:g}")
    print("  R          F        g_max     F/4pi    ratio   delta1*   T_c     L_max (mm)")
    for R in (0.99, 0.999, 0.9999, 0.99999):
        F = float(finesse_from_reflectivity(R))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            asym = g_max_asymptotic(od, R)
        r = maximize_g(od, R)
        T = float(max_control_transmission(R, detuned_od(od, r.location.delta1)))
        # longest cavity that still satisfies the bandwidth condition
        margin_per_m = cavity_bandwidth_check(rb, CavityConfig(R, length=1.0)).margin
        print(f"  {R:<9g} {F:8.1f} {r.value:10.2f} {asym.g:9.2f} {r.value / asym.g:7.4f}"
              f" {r.location.delta1:8.2f} {T:7.4f} {1e3 / margin_per_m:9.3f}")

    F_pi = finesse_for_phase(math.pi, rb, field)
    print(f"\nfinesse for a pi phase at I0 = {I0:g} W/m^2: {F_pi:.1f}"
          f" (R = {reflectivity_for_finesse(F_pi):.5f})")


if __name__ == "__main__":
    main()
