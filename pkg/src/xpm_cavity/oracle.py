"""Brute-force reference computations used to certify the closed forms.

Nothing here is clever on purpose: the multiple-reflection series are summed
term by term and extrema are found by exhaustive grid evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .cavity import PassPhases, g_shape
from .core import Detuning, f_shape


@dataclass(frozen=True)
class BounceTrace:
    terms: np.ndarray  # complex amplitude escaping after each round trip
    partial_sum: complex
    bounce_count: int
    error_bound: float  # bound on |closed form - partial_sum|

    def __post_init__(self):
        assert self.bounce_count == len(self.terms)


def _fsum_complex(values) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _geometric_terms(first: complex, ratio: complex, n: int) -> np.ndarray:
    factors = np.full(n, ratio, dtype=complex)
    factors[0] = 1.0
    return first * np.cumprod(factors)


def finite_bounce_sum(R: float, delta: complex, phases: PassPhases,
                      n_bounces: int) -> BounceTrace:
    """Sum the first ``n_bounces`` terms of the transmitted-probe series.

    Term n is t^2 e^(i(delta + phi1)) [r^2 e^(i(2 delta + phi1 + phi2))]^n
    with t^2 = 1 - R and r^2 = R.
    """
    if n_bounces < 1:
        raise ValueError("n_bounces must be >= 1")
    first = (1 - R) * np.exp(1j * (delta + phases.phi1))
    ratio = R * np.exp(1j * (2 * delta + phases.phi1 + phases.phi2))
    terms = _geometric_terms(first, ratio, n_bounces)
    q = abs(ratio)
    if q < 1:
        bound = abs(first) * q**n_bounces / (1 - q)
    else:
        bound = math.inf
    return BounceTrace(terms, _fsum_complex(terms), n_bounces, bound)


def intracavity_buildup_sum(R: float, x: float, kcL: float, n_bounces: int):
    """Intracavity control intensities at the centre from explicit round trips.

    The rightward field enters through the left mirror (amplitude t), crosses
    half the medium (field factor e^(-x/4)) and then repeats round trips of
    gain r^2 e^(-x) e^(2i kcL). The leftward field at the centre is the
    rightward one after the remaining half pass, one mirror and another half
    pass. Returns ``(|A_r|^2, |A_l|^2)``.
    """
    if n_bounces < 1:
        raise ValueError("n_bounces must be >= 1")
    t = math.sqrt(1 - R)
    r = math.sqrt(R)
    first = t * np.exp(-x / 4) * np.exp(0.5j * kcL)
    roundtrip = R * np.exp(-x) * np.exp(2j * kcL)
    right_terms = _geometric_terms(first, roundtrip, n_bounces)
    left_terms = right_terms * (r * np.exp(-x / 2) * np.exp(1j * kcL))
    right = _fsum_complex(right_terms)
    left = _fsum_complex(left_terms)
    return abs(right) ** 2, abs(left) ** 2


class GridExtremum(NamedTuple):
    location: Detuning
    value: float
    spacing: tuple


def _landscape(fun, params) -> Callable:
    if callable(fun):
        return fun
    if fun == "f":
        return lambda d1, d2: f_shape(d1, d2, params["od"])
    if fun == "g":
        return lambda d1, d2: g_shape(d1, d2, params["od"], params["R"])
    raise ValueError(f"unknown landscape {fun!r}")


def dense_grid_extremum(fun, params: dict, box, resolution: int,
                        mode: str = "max") -> GridExtremum:
    """Exhaustive extremum of ``fun`` on a uniform ``resolution`` x ``resolution`` grid.

    ``box`` is ``((d1_lo, d1_hi), (d2_lo, d2_hi))``. Ties go to the first
    point in (delta1, delta2) lexicographic order.
    """
    (a1, b1), (a2, b2) = box
    d1 = np.linspace(a1, b1, resolution)
    d2 = np.linspace(a2, b2, resolution)
    values = np.asarray(_landscape(fun, params)(d1[:, None], d2[None, :]), dtype=float)
    values = np.broadcast_to(values, (resolution, resolution))
    flat = values.ravel()
    idx = int(np.argmax(flat) if mode == "max" else np.argmin(flat))
    i, j = divmod(idx, resolution)
    return GridExtremum(Detuning(float(d1[i]), float(d2[j])), float(flat[idx]),
                        (float(d1[1] - d1[0]), float(d2[1] - d2[0])))
