"""Quadrature on the unit disk and the quaternion-valued inner product.

The rule is a tensor product: Gauss-Legendre nodes mapped from (-1, 1)
to (0, 1) in rho, a uniform periodic grid theta_l = 2 pi l / Ntheta in
the angle.  The uniform rule integrates trigonometric polynomials below
the Nyquist order exactly, which is exactly the angular structure of
every integrand here; the radial Gauss rule absorbs the oscillation of
the Bessel factors.

The inner product is <f, g> = integral of conj(f) g over the disk,
linear in quaternion coefficients on the right of g.  Reductions go
through numpy matmul, whose pairwise summation keeps results stable
against reordering.
"""

from dataclasses import dataclass

import numpy as np

from .basis import DiskPoint
from .errors import ConfigurationError, NumericError
from .quatnum import conj_mul

DEFAULT_NR = 200
DEFAULT_NTHETA = 256


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Flattened tensor rule over the unit disk.

    ``points`` is a DiskPoint of shape (nr * ntheta,), radial index
    outermost; ``weights`` already include the polar Jacobian rho and
    the angular step, so plain weighted sums are area integrals.
    """

    nr: int
    ntheta: int
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    points: DiskPoint
    weights: np.ndarray

    @property
    def node_count(self):
        return self.nr * self.ntheta


def make_rule(nr=DEFAULT_NR, ntheta=DEFAULT_NTHETA):
    """Build the tensor rule with nr radial and ntheta angular nodes."""
    if nr < 2:
        raise ConfigurationError("nr must be >= 2, got %d" % nr)
    if ntheta < 4:
        raise ConfigurationError("ntheta must be >= 4, got %d" % ntheta)
    xs, ws = np.polynomial.legendre.leggauss(int(nr))
    rho = 0.5 * (xs + 1.0)
    wr = 0.5 * ws
    theta = (2.0 * np.pi / ntheta) * np.arange(ntheta)
    R = np.repeat(rho, ntheta)
    TH = np.tile(theta, nr)
    points = DiskPoint.from_polar(R, TH)
    weights = np.repeat(wr * rho, ntheta) * (2.0 * np.pi / ntheta)
    return QuadratureRule(int(nr), int(ntheta), rho, wr, points, weights)


def _field_values(f, rule):
    vals = np.asarray(f(rule.points), dtype=float)
    if vals.shape != (rule.node_count, 4):
        raise NumericError(
            "field evaluation returned shape %r, expected (%d, 4)"
            % (vals.shape, rule.node_count)
        )
    if not np.all(np.isfinite(vals)):
        bad = int(np.argwhere(~np.isfinite(vals))[0][0])
        raise NumericError(
            "non-finite field value at node %d (x=%.6g, y=%.6g)"
            % (bad, float(rule.points.x[bad]), float(rule.points.y[bad]))
        )
    return vals


def disk_integral(values, rule):
    """Weighted sum of scalar node values over the disk."""
    return float(rule.weights @ np.asarray(values, dtype=float))


def inner_product_values(fv, gv, rule):
    """Inner product from precomputed node values, shape (4,)."""
    return rule.weights @ conj_mul(fv, gv)


def inner_product_H(f, g, rule):
    """<f, g> as a quaternion, shape (4,)."""
    fv = _field_values(f, rule)
    gv = _field_values(g, rule)
    return inner_product_values(fv, gv, rule)


def norm2(f, rule):
    """Squared L2 norm of f over the disk (scalar part of <f, f>)."""
    fv = _field_values(f, rule)
    return float(rule.weights @ np.sum(fv * fv, axis=-1))
