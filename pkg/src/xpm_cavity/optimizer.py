"""Extrema of the single-pass (f) and cavity (g) phase landscapes.

Search is a fixed, derivative-free schedule: a coarse grid that is
logarithmic in delta1 and linear in delta2, then repeated local grids around
the incumbent, each box a quarter the width of the previous one. No random
restarts, so identical inputs give bit-identical results.

Only the positive-delta1 half plane is searched. f and g are odd under
(delta1, delta2) -> (-delta1, -delta2), so the other half follows by
:meth:`ExtremumResult.mirrored`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .cavity import finesse_from_reflectivity, g_shape, max_control_transmission
from .core import Detuning, detuned_od, f_shape

DELTA1_MIN = 1e-2
F_DELTA1_MAX = 1e3
DELTA2_SPAN = 5.0
COARSE_SHAPE = (241, 201)  # (delta1, delta2) points
FINE_POINTS = 17
SHRINK = 4.0
CELL_TOL = 1e-9  # relative cell size at which refinement stops
GRAD_TOL = 1e-6  # relative gradient tolerance for convergence
BRANCH_DEPTH = -1e-4  # far-detuned minimum must lie below this
MAX_ITER = 100

KINDS = ("global-max", "global-min", "local-max", "local-min")
_MIRROR_KIND = {"global-max": "global-min", "global-min": "global-max",
                "local-max": "local-min", "local-min": "local-max"}


class BranchNotFoundError(RuntimeError):
    """The requested local extremum does not exist for these parameters."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class ExtremumResult:
    location: Detuning
    value: float
    kind: str
    transmission: float
    gradient_norm: float
    converged: bool
    iterations: int = 0
    evaluations: int = 0
    interior: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown extremum kind {self.kind!r}")

    def mirrored(self) -> ExtremumResult:
        """Partner extremum at (-delta1, -delta2) with the opposite value."""
        return replace(self, location=-self.location, value=-self.value,
                       kind=_MIRROR_KIND[self.kind])


@dataclass
class SweepTable:
    """Tabulated results over one or more ordered axes.

    ``records`` holds one dict per grid point in row-major (C) order of
    ``axes``; for a single axis that is one record per sample.
    """

    axes: dict
    records: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.axes = {k: np.asarray(v, dtype=float) for k, v in self.axes.items()}
        for key, values in self.axes.items():
            if values.ndim != 1 or (values.size > 1 and not np.all(np.diff(values) > 0)):
                raise ValueError(f"axis {key!r} must be strictly increasing")
        expected = math.prod(v.size for v in self.axes.values())
        if len(self.records) != expected:
            raise ValueError(f"{len(self.records)} records for {expected} grid points")

    @property
    def shape(self) -> tuple:
        return tuple(v.size for v in self.axes.values())

    @property
    def columns(self) -> list:
        cols = list(self.axes)
        for rec in self.records[:1]:
            cols += [k for k in rec if k not in cols]
        return cols

    def rows(self):
        names = list(self.axes)
        for index, rec in zip(np.ndindex(*self.shape), self.records):
            row = {n: float(self.axes[n][i]) for n, i in zip(names, index)}
            row.update(rec)
            yield row

    def column(self, name) -> np.ndarray:
        return np.array([row[name] for row in self.rows()], dtype=float)


# -- landscape search ---------------------------------------------------------

def _scaled_gradient(func, d1, d2):
    """Central-difference gradient, each component scaled by max(1, |delta|)."""
    s1, s2 = max(1.0, abs(d1)), max(1.0, abs(d2))
    h1, h2 = 1e-5 * s1, 1e-5 * s2
    g1 = (func(d1 + h1, d2) - func(d1 - h1, d2)) / (2 * h1) * s1
    g2 = (func(d1, d2 + h2) - func(d1, d2 - h2)) / (2 * h2) * s2
    return math.hypot(float(g1), float(g2))


def _argbest(values, sign):
    # first occurrence in (delta1, delta2) lexicographic order breaks ties
    return np.unravel_index(int(np.argmax(sign * values)), values.shape)


@dataclass(frozen=True)
class _Search:
    location: Detuning
    value: float
    gradient_norm: float
    converged: bool
    interior: bool
    iterations: int
    evaluations: int


def _search(func, delta1_range, delta2_range, sign) -> _Search:
    """Grid-then-shrink search of ``sign * func`` over a box, delta1 > 0."""
    u_lo, u_hi = math.log10(delta1_range[0]), math.log10(delta1_range[1])
    v_lo, v_hi = delta2_range
    u = np.linspace(u_lo, u_hi, COARSE_SHAPE[0])
    v = np.linspace(v_lo, v_hi, COARSE_SHAPE[1])
    values = func(10.0 ** u[:, None], v[None, :])
    i, j = _argbest(values, sign)
    cu, cv = u[i], v[j]
    best = float(values[i, j])
    hu, hv = 2 * (u[1] - u[0]), 2 * (v[1] - v[0])
    evaluations = values.size

    iterations = 0
    cell_u = u[1] - u[0]
    cell_v = v[1] - v[0]
    while iterations < MAX_ITER:
        if (cell_u * math.log(10) < CELL_TOL
                and cell_v < CELL_TOL * max(1.0, abs(cv))):
            break
        iterations += 1
        fu = np.clip(np.linspace(cu - hu, cu + hu, FINE_POINTS), u_lo, u_hi)
        fv = np.clip(np.linspace(cv - hv, cv + hv, FINE_POINTS), v_lo, v_hi)
        values = func(10.0 ** fu[:, None], fv[None, :])
        evaluations += values.size
        i, j = _argbest(values, sign)
        if sign * values[i, j] >= sign * best:
            cu, cv, best = fu[i], fv[j], float(values[i, j])
        cell_u, cell_v = 2 * hu / (FINE_POINTS - 1), 2 * hv / (FINE_POINTS - 1)
        hu, hv = hu / SHRINK, hv / SHRINK

    d1, d2 = float(10.0 ** cu), float(cv)
    grad = _scaled_gradient(func, d1, d2)
    edge = 1e-6
    interior = bool((u_lo + edge < cu < u_hi - edge) and (v_lo + edge < cv < v_hi - edge))
    converged = interior and iterations < MAX_ITER and grad <= GRAD_TOL * max(abs(best), 1e-300)
    return _Search(Detuning(d1, d2), best, grad, converged, interior, iterations, evaluations)


def _result(search: _Search, kind: str, transmission: float) -> ExtremumResult:
    return ExtremumResult(search.location, search.value, kind, float(transmission),
                          search.gradient_norm, search.converged, search.iterations,
                          search.evaluations, search.interior)


def _f_delta1_max(od):
    return max(F_DELTA1_MAX, 10 * math.sqrt(od))


def _g_delta1_max(od, R):
    F = float(finesse_from_reflectivity(R))
    return max(10 * math.sqrt(F / math.pi * od), 10.0)


def _check_od(od):
    if not (math.isfinite(od) and od > 0):
        raise ValueError(f"od must be finite and > 0, got {od!r}")


def _check_cavity(R):
    if not 0 < R < 1:
        raise ValueError(f"reflectivity must lie in (0, 1) for a cavity, got {R!r}")


def maximize_f(od: float) -> ExtremumResult:
    """Global maximum of f(delta1, delta2; OD) with delta1 > 0.

    The global minimum is ``maximize_f(od).mirrored()``.
    """
    _check_od(od)
    func = lambda d1, d2: f_shape(d1, d2, od)
    s = _search(func, (DELTA1_MIN, _f_delta1_max(od)), (-DELTA2_SPAN, DELTA2_SPAN), +1)
    return _result(s, "global-max", math.exp(-detuned_od(od, s.location.delta1)))


def find_far_detuned_min_f(od: float) -> ExtremumResult:
    """Broad local minimum of f on the delta1 > 0, delta2 > 0 branch.

    Raises :class:`BranchNotFoundError` when the best point in that quadrant
    sits on the search-box edge or is not below ``BRANCH_DEPTH``, which is
    what happens at small OD where the branch has not formed.
    """
    _check_od(od)
    func = lambda d1, d2: f_shape(d1, d2, od)
    s = _search(func, (DELTA1_MIN, _f_delta1_max(od)), (0.0, DELTA2_SPAN), -1)
    result = _result(s, "local-min", math.exp(-detuned_od(od, s.location.delta1)))
    if not s.interior or s.value >= BRANCH_DEPTH:
        raise BranchNotFoundError(
            f"no far-detuned minimum of f at OD={od:g} (best {s.value:.3g} at "
            f"({s.location.delta1:.4g}, {s.location.delta2:.4g}))", best=result)
    return result


def maximize_g(od: float, R: float) -> ExtremumResult:
    """Global maximum of g(delta1, delta2; OD, R) on the antidiagonal branch.

    ``transmission`` is the resonant cavity transmission of the control.
    """
    _check_od(od)
    _check_cavity(R)
    func = lambda d1, d2: g_shape(d1, d2, od, R)
    s = _search(func, (DELTA1_MIN, _g_delta1_max(od, R)), (-DELTA2_SPAN, 0.0), +1)
    x = detuned_od(od, s.location.delta1)
    return _result(s, "global-max", max_control_transmission(R, x))


def find_local_min_g(od: float, R: float) -> ExtremumResult:
    """Local minimum of g on the diagonal (delta1 > 0, delta2 > 0)."""
    _check_od(od)
    _check_cavity(R)
    func = lambda d1, d2: g_shape(d1, d2, od, R)
    s = _search(func, (DELTA1_MIN, _g_delta1_max(od, R)), (0.0, DELTA2_SPAN), -1)
    x = detuned_od(od, s.location.delta1)
    return _result(s, "local-min", max_control_transmission(R, x))


def g_peaks(od: float, R: float) -> list:
    """The four extrema of g: global max/min (antidiagonal), local max/min (diagonal)."""
    top = maximize_g(od, R)
    low = find_local_min_g(od, R)
    return [top, top.mirrored(), low.mirrored(), low]


# -- sweeps -------------------------------------------------------------------

def sweep_f_vs_od(od_samples) -> SweepTable:
    """f_max, its location and the single-pass transmission against OD."""
    od_samples = np.asarray(od_samples, dtype=float)
    records = []
    for od in od_samples:
        r = maximize_f(float(od))
        records.append({"f_max": r.value, "delta1_star": r.location.delta1,
                        "delta2_star": r.location.delta2,
                        "transmission": r.transmission, "converged": int(r.converged)})
    return SweepTable({"od": od_samples}, records, name="f_max_vs_od")


def sweep_min_vs_od(od_samples) -> SweepTable:
    """Far-detuned local minimum of f against OD; NaN rows where it does not exist."""
    od_samples = np.asarray(od_samples, dtype=float)
    records = []
    for od in od_samples:
        try:
            r = find_far_detuned_min_f(float(od))
            found = 1
        except BranchNotFoundError as exc:
            r, found = exc.best, 0
        nan = float("nan")
        records.append({
            "abs_f_min": abs(r.value) if found else nan,
            "f_min": r.value if found else nan,
            "delta1_bar": r.location.delta1 if found else nan,
            "delta2_bar": r.location.delta2 if found else nan,
            "transmission": r.transmission if found else nan,
            "branch_found": found,
            "converged": int(r.converged),
        })
    return SweepTable({"od": od_samples}, records, name="f_min_vs_od")


def contour_grid(fun: str, od: float, R: float | None, delta1_range, delta2_range,
                 resolution) -> SweepTable:
    """Dense (delta1, delta2) grid of f or g for contour plotting."""
    if isinstance(resolution, int):
        resolution = (resolution, resolution)
    if min(resolution) < 2:
        raise ValueError("resolution must be >= 2 per axis")
    d1 = np.linspace(*delta1_range, resolution[0])
    d2 = np.linspace(*delta2_range, resolution[1])
    if fun == "f":
        values = f_shape(d1[:, None], d2[None, :], od)
    elif fun == "g":
        if R is None:
            raise ValueError("g needs a reflectivity")
        values = g_shape(d1[:, None], d2[None, :], od, R)
    else:
        raise ValueError(f"unknown landscape {fun!r}")
    values = np.broadcast_to(values, (d1.size, d2.size))
    records = [{"value": float(v)} for v in values.ravel()]
    return SweepTable({"delta1": d1, "delta2": d2}, records, name=f"{fun}_contour")
