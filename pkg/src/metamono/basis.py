"""Standard and basic metamonogenic basis functions on the unit disk.

The family F_n[lam] solves (D + lam) F = 0 with D = i d/dx + j d/dy
acting on the left.  Components, in the fixed (s, i, j, k) order:

    s = J_{n-1}(lam rho) cos((n-1) theta)
    i = J_n(lam rho)     cos(n theta)
    j = J_n(lam rho)     sin(n theta)
    k = -J_{n-1}(lam rho) sin((n-1) theta)

with J_{-1} = -J_1.  Written this way the limits at the origin
(F_0 -> i, F_1 -> 1, F_n -> 0 for n >= 2) need no special casing.  The
basic functions F_{n,m} pin lam to the m-th positive zero of J_n, which
makes the boundary i/j components vanish and the family orthogonal
outside the {0,1} angular block.

Also here: the reduced-quaternionic split of F_n, the conjugate
completion that rebuilds a metamonogenic function from its i and j
components, and finite-difference residuals of the first-order operator
and of the scalar second-order factor.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .bessel import bessel_j, bessel_j_prime, bessel_zero, default_zero_table
from .errors import DomainError
from .quatnum import UNIT_I, UNIT_J, qmul

TWO_PI = 2.0 * np.pi


class BasisIndex(NamedTuple):
    n: int
    m: int


@dataclass(frozen=True, eq=False)
class DiskPoint:
    """Point(s) carrying both cartesian and polar coordinates.

    All four fields share one broadcastable shape; scalars give
    zero-dimensional arrays.  theta is kept in [0, 2*pi).
    """

    x: np.ndarray
    y: np.ndarray
    rho: np.ndarray
    theta: np.ndarray

    @classmethod
    def from_cartesian(cls, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        rho = np.hypot(x, y)
        theta = np.mod(np.arctan2(y, x), TWO_PI)
        return cls(x, y, rho, theta)

    @classmethod
    def from_polar(cls, rho, theta):
        rho = np.asarray(rho, dtype=float)
        if np.any(rho < 0.0):
            raise DomainError("rho must be nonnegative")
        theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        return cls(rho * np.cos(theta), rho * np.sin(theta), rho, theta)

    @property
    def shape(self):
        return self.rho.shape

    def shifted(self, dx=0.0, dy=0.0):
        """The point translated in cartesian coordinates (for stencils)."""
        return DiskPoint.from_cartesian(self.x + dx, self.y + dy)


@dataclass
class FieldFunction:
    """A quaternion-valued field, wrapped with light metadata.

    ``fn`` maps a DiskPoint with shape S to a component array of shape
    S + (4,).  ``lam`` records the kernel parameter when one applies.
    """

    fn: Callable[[DiskPoint], np.ndarray]
    lam: Optional[float] = None
    label: str = ""

    def __call__(self, p: DiskPoint) -> np.ndarray:
        return self.fn(p)


def _check_lam(lam):
    lam = float(lam)
    if lam == 0.0 or not np.isfinite(lam):
        raise DomainError("kernel parameter must be a nonzero finite real")
    return lam


def eval_F(n, lam, p):
    """Components of F_n[lam] at p, shape p.shape + (4,)."""
    lam = _check_lam(lam)
    z = lam * p.rho
    jn = bessel_j(n, z)
    jm = -bessel_j(1, z) if n == 0 else bessel_j(n - 1, z)
    th = p.theta
    c1 = np.cos((n - 1) * th)
    s1 = np.sin((n - 1) * th)
    cn = np.cos(n * th)
    sn = np.sin(n * th)
    return np.stack([jm * c1, jn * cn, jn * sn, -jm * s1], axis=-1)


def standard_function(n, lam, label=""):
    lam = _check_lam(lam)
    return FieldFunction(
        lambda p: eval_F(n, lam, p),
        lam=lam,
        label=label or "F%d[%g]" % (n, lam),
    )


def eval_Fnm(idx, p, table=None):
    """Components of the basic function F_{n,m} at p."""
    n, m = idx
    table = table or default_zero_table()
    return eval_F(n, table.zero(n, m), p)


def basic_function(idx, table=None):
    n, m = idx
    table = table or default_zero_table()
    lam = table.zero(n, m)
    return FieldFunction(
        lambda p: eval_F(n, lam, p), lam=lam, label="F(%d,%d)" % (n, m)
    )


def eval_F_split(n, lam, p):
    """The reduced-quaternionic pair (F_n_plus, F_n_minus) at p.

    Each part takes values in span{1, i, j} (k component identically
    zero) and qmul(plus, i) + qmul(minus, j) recombines to eval_F.
    Undefined at the origin; the n/(lam rho) factor is instead obtained
    from the recurrence pair as J_{n-1} - J_n', which keeps every
    evaluation finite, but rho = 0 is still refused so the advertised
    domain matches the formula's.
    """
    lam = _check_lam(lam)
    if np.any(p.rho == 0.0):
        raise DomainError("split form is not defined at rho = 0; use eval_F")
    z = lam * p.rho
    jn = bessel_j(n, z)
    jm = -bessel_j(1, z) if n == 0 else bessel_j(n - 1, z)
    djn = bessel_j_prime(n, z)
    ratio = jm - djn  # (n / (lam rho)) * J_n without the division
    ct = np.cos(p.theta)
    st = np.sin(p.theta)
    cn = np.cos(n * p.theta)
    sn = np.sin(n * p.theta)
    zero = np.zeros_like(jn)
    plus = np.stack(
        [jn * cn, -ct * djn * cn - st * ratio * sn,
         -st * djn * cn + ct * ratio * sn, zero],
        axis=-1,
    )
    minus = np.stack(
        [jn * sn, -ct * djn * sn + st * ratio * cn,
         -st * djn * sn - ct * ratio * cn, zero],
        axis=-1,
    )
    return plus, minus


def complete_metamonogenic(f1, f2, lam, p, h=1e-4):
    """Rebuild the full quaternionic field from its i and j components.

    f1 and f2 are scalar fields (DiskPoint -> real array) solving the
    scalar second-order equation; the missing scalar and k components
    are the unique completion

        f0 = (d f1/dx + d f2/dy) / lam
        f3 = (d f1/dy - d f2/dx) / lam

    with derivatives taken by central differences of step h.
    """
    lam = _check_lam(lam)
    px1, px0 = p.shifted(dx=h), p.shifted(dx=-h)
    py1, py0 = p.shifted(dy=h), p.shifted(dy=-h)
    d1x = (np.asarray(f1(px1)) - np.asarray(f1(px0))) / (2.0 * h)
    d1y = (np.asarray(f1(py1)) - np.asarray(f1(py0))) / (2.0 * h)
    d2x = (np.asarray(f2(px1)) - np.asarray(f2(px0))) / (2.0 * h)
    d2y = (np.asarray(f2(py1)) - np.asarray(f2(py0))) / (2.0 * h)
    shape = p.shape
    f0 = np.broadcast_to(np.asarray((d1x + d2y) / lam, dtype=float), shape)
    f3 = np.broadcast_to(np.asarray((d1y - d2x) / lam, dtype=float), shape)
    v1 = np.broadcast_to(np.asarray(f1(p), dtype=float), shape)
    v2 = np.broadcast_to(np.asarray(f2(p), dtype=float), shape)
    return np.stack([f0, v1, v2, f3], axis=-1)


def completed_function(f1, f2, lam, h=1e-4, label=""):
    lam = _check_lam(lam)
    return FieldFunction(
        lambda p: complete_metamonogenic(f1, f2, lam, p, h),
        lam=lam,
        label=label or "completed",
    )


def _require_margin(p, h):
    if np.any(p.rho > 1.0 - h):
        raise DomainError(
            "stencil of step %g leaves the disk: max rho %.6f" % (h, float(np.max(p.rho)))
        )


def dirac_residual(f, lam, p, h=1e-4):
    """(D + lam) f at p by central differences of step h.

    Zero to O(h^2) when f is metamonogenic for this lam.  p must keep a
    margin of h to the boundary.
    """
    lam = _check_lam(lam)
    _require_margin(p, h)
    dfx = (f(p.shifted(dx=h)) - f(p.shifted(dx=-h))) / (2.0 * h)
    dfy = (f(p.shifted(dy=h)) - f(p.shifted(dy=-h))) / (2.0 * h)
    return qmul(UNIT_I, dfx) + qmul(UNIT_J, dfy) + lam * np.asarray(f(p), dtype=float)


def helmholtz_residual(f_component, lam, p, h=1e-3):
    """(Laplacian + lam^2) of a scalar field by the 5-point stencil."""
    lam = _check_lam(lam)
    _require_margin(p, h)
    c = np.asarray(f_component(p), dtype=float)
    s = (
        np.asarray(f_component(p.shifted(dx=h)), dtype=float)
        + np.asarray(f_component(p.shifted(dx=-h)), dtype=float)
        + np.asarray(f_component(p.shifted(dy=h)), dtype=float)
        + np.asarray(f_component(p.shifted(dy=-h)), dtype=float)
        - 4.0 * c
    )
    return s / (h * h) + lam * lam * c


def component_field(f, name):
    """Extract one scalar component of a quaternionic field by name."""
    from .quatnum import COMPONENT_NAMES

    try:
        idx = COMPONENT_NAMES.index(name)
    except ValueError:
        raise DomainError("component must be one of s, i, j, k; got %r" % (name,))
    return lambda p: np.asarray(f(p), dtype=float)[..., idx]


def combination(funcs, coeffs, label=""):
    """Right linear combination sum f_a * c_a as a FieldFunction."""
    funcs = list(funcs)
    coeffs = [np.asarray(c, dtype=float) for c in coeffs]

    def fn(p):
        acc = np.zeros(p.shape + (4,))
        for f, c in zip(funcs, coeffs):
            acc = acc + qmul(f(p), c)
        return acc

    return FieldFunction(fn, label=label or "combination")
