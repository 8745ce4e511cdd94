"""Imaginary-time evolution of fields built on the basic family.

A wave state is a finite set of modes; its field is

    v(z, t) = sum F_{n,m}(z) c_{n,m} exp(j_{n,m} t / K)

which solves the first-order companion system (D + K d/dt) v = 0 and,
componentwise, the second-order equation (Laplacian + K^2 d2/dt2) v = 0.
The time dependence is exact (spectral), so there is no stepping
scheme; evaluation at any t is a weighted reconstruction.  Exponents
grow with the mode index, hence the overflow guard.
"""

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from .basis import BasisIndex, _require_margin, eval_Fnm
from .bessel import default_zero_table
from .errors import DomainError, OverflowGuardError
from .quatnum import UNIT_I, UNIT_J, qmul

GROWTH_CAP = 700.0


@dataclass
class WaveState:
    """Mode coefficients plus the time constant K and current time."""

    coeffs: Dict[BasisIndex, np.ndarray]
    k: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        self.k = float(self.k)
        self.t = float(self.t)
        if not self.k > 0.0:
            raise DomainError("K must be positive")
        if self.t < 0.0:
            raise DomainError("state time must be nonnegative")
        self.coeffs = {
            BasisIndex(*i): np.asarray(c, dtype=float)
            for i, c in self.coeffs.items()
        }


def _growth_factors(state, t, table):
    out = []
    for idx, c in state.coeffs.items():
        j = table.zero(idx.n, idx.m)
        e = j * t / state.k
        if e > GROWTH_CAP:
            raise OverflowGuardError(
                "mode (%d,%d): exponent %.3g exceeds the growth cap %g"
                % (idx.n, idx.m, e, GROWTH_CAP)
            )
        out.append((idx, c, math.exp(e)))
    return out


def evolve_eval(state, p, t=None, table=None):
    """The evolved field at p; t defaults to the state's own time."""
    t = state.t if t is None else float(t)
    table = table or default_zero_table()
    acc = np.zeros(p.shape + (4,))
    for idx, c, g in _growth_factors(state, t, table):
        acc = acc + qmul(eval_Fnm(idx, p, table), c) * g
    return acc


def timemt_residual(state, p, t, h_space=1e-4, h_time=1e-4, table=None):
    """(D + K d/dt) of the evolved field by central differences.

    O(h^2) small for states assembled from the basic modes; the
    spatial stencil needs a margin of h_space inside the disk.
    """
    table = table or default_zero_table()
    _require_margin(p, h_space)
    dfx = (
        evolve_eval(state, p.shifted(dx=h_space), t, table)
        - evolve_eval(state, p.shifted(dx=-h_space), t, table)
    ) / (2.0 * h_space)
    dfy = (
        evolve_eval(state, p.shifted(dy=h_space), t, table)
        - evolve_eval(state, p.shifted(dy=-h_space), t, table)
    ) / (2.0 * h_space)
    vt = (
        evolve_eval(state, p, t + h_time, table)
        - evolve_eval(state, p, t - h_time, table)
    ) / (2.0 * h_time)
    return qmul(UNIT_I, dfx) + qmul(UNIT_J, dfy) + state.k * vt


def initial_time_derivative(state, p, table=None):
    """dv/dt at t = 0, from the series itself (no differencing)."""
    table = table or default_zero_table()
    acc = np.zeros(p.shape + (4,))
    for idx, c in state.coeffs.items():
        j = table.zero(idx.n, idx.m)
        acc = acc + qmul(eval_Fnm(idx, p, table), c) * (j / state.k)
    return acc


def wick_wave_residual(state, p, t, h=1e-3, table=None):
    """(Laplacian + K^2 d2/dt2) of the evolved field, per component.

    Returns the shape p.shape + (4,) array of componentwise residuals.
    """
    table = table or default_zero_table()
    _require_margin(p, h)
    c0 = evolve_eval(state, p, t, table)
    lap = (
        evolve_eval(state, p.shifted(dx=h), t, table)
        + evolve_eval(state, p.shifted(dx=-h), t, table)
        + evolve_eval(state, p.shifted(dy=h), t, table)
        + evolve_eval(state, p.shifted(dy=-h), t, table)
        - 4.0 * c0
    ) / (h * h)
    vtt = (
        evolve_eval(state, p, t + h, table)
        - 2.0 * c0
        + evolve_eval(state, p, t - h, table)
    ) / (h * h)
    return lap + (state.k * state.k) * vtt


def mode_emergence(state, high_idx, times, p, table=None):
    """Fraction of the field's peak magnitude carried by one mode.

    For each time, evaluates the full field and the single designated
    mode on the sample points p and records
    max|mode| / max|field|.  Returns (t_star, fractions) where t_star
    is the first time the fraction exceeds 0.1, or None if it never
    does.
    """
    high_idx = BasisIndex(*high_idx)
    if high_idx not in state.coeffs:
        raise DomainError("state has no mode %r" % (high_idx,))
    table = table or default_zero_table()
    hvals = eval_Fnm(high_idx, p, table)
    c = state.coeffs[high_idx]
    j = table.zero(high_idx.n, high_idx.m)
    fractions = []
    t_star = None
    for t in times:
        full = evolve_eval(state, p, t, table)
        e = j * t / state.k
        if e > GROWTH_CAP:
            raise OverflowGuardError(
                "mode (%d,%d): exponent %.3g exceeds the growth cap %g"
                % (high_idx.n, high_idx.m, e, GROWTH_CAP)
            )
        hi = qmul(hvals, c) * math.exp(e)
        denom = float(np.max(np.sqrt(np.sum(full * full, axis=-1))))
        numer = float(np.max(np.sqrt(np.sum(hi * hi, axis=-1))))
        frac = numer / denom if denom > 0.0 else 0.0
        fractions.append(frac)
        if t_star is None and frac > 0.1:
            t_star = float(t)
    return t_star, fractions
