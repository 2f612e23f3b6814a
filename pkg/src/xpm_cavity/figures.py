"""Built-in sweep configurations that regenerate the figure data sets."""

from __future__ import annotations

import math

import numpy as np

from .cavity import finesse_from_reflectivity
from .optimizer import contour_grid, sweep_f_vs_od, sweep_min_vs_od


def _log_grid(lo_exp, hi_exp, per_decade, extra=()):
    n = int(round((hi_exp - lo_exp) * per_decade)) + 1
    exps = np.round(np.linspace(lo_exp, hi_exp, n), 12)
    return np.unique(np.concatenate([10.0 ** exps, np.asarray(extra, dtype=float)]))


FIG2_OD = _log_grid(-1, 2, 10, extra=(15.0,))
FIG4_OD = _log_grid(1, 5, 10)
FIG6_REFLECTIVITIES = (0.99, 0.999999)


def fig2():
    """f_max, delta1*, delta2* and transmission against OD."""
    return {"fig2": sweep_f_vs_od(FIG2_OD)}


def fig3(resolution=201):
    """Contour of f(delta1, delta2; OD=100)."""
    return {"fig3": contour_grid("f", 100.0, None, (-10.0, 10.0), (-3.0, 3.0), resolution)}


def fig4():
    """|f_min|, its location and transmission against OD."""
    return {"fig4": sweep_min_vs_od(FIG4_OD)}


def fig6(resolution=201):
    """Contours of g(delta1, delta2; OD=1, R), one table per reflectivity."""
    out = {}
    for R in FIG6_REFLECTIVITIES:
        F = float(finesse_from_reflectivity(R))
        span = 3 * math.sqrt(F / math.pi)
        out[f"fig6_R{R:g}"] = contour_grid("g", 1.0, R, (-span, span), (-3.0, 3.0), resolution)
    return out


FIGURES = {"fig2": fig2, "fig3": fig3, "fig4": fig4, "fig6": fig6}
