"""First-kind Bessel functions of integer order and their positive zeros.

Evaluation is done from scratch in double precision, by two routes: an
ascending power series where its terms stay well conditioned, and
Miller's backward recurrence normalized with the Neumann sum
J_0(x) + 2*sum_k J_{2k}(x) = 1 everywhere else.  Derivatives only ever
come from the three-term identity 2 J_n' = J_{n-1} - J_{n+1}.

Positive zeros j_{n,m} are kept in a lazy, thread-safe table.  Rows are
filled by bracketing: the McMahon asymptote seeds order zero, and for
n >= 1 the interlacing j_{n-1,m} < j_{n,m} < j_{n-1,m+1} supplies an
interval with exactly one sign change, so no root can be missed or
counted twice.
"""

import math
import threading

import numpy as np

from .errors import ConfigurationError, DomainError, NumericError

ORDER_MAX = 64

# Crossover between the two routes.  The series loses digits to
# cancellation once x passes the turning point region; below
# max(7, n/2) its worst relative error stays at a few ulp.
_SERIES_X = 7.0
_SERIES_SLOPE = 0.5

# The backward recurrence starts this far above max(n, x); by then the
# discarded tail is below 1e-15 relative.
_MILLER_PAD = 20
_MILLER_PAD_SQRT = 4.0

# Power-of-two rescaling is exact in binary floating point.
_RESCALE_LIMIT = 2.0 ** 831
_RESCALE = 2.0 ** -832


def _series(n, x):
    # sum over k of (-1)^k (x/2)^(n+2k) / (k! (n+k)!), terms by
    # recurrence, compensated accumulation.  x must be nonnegative and
    # below the crossover so the alternating sum stays mild.
    half = 0.5 * x
    t = np.ones_like(x)
    for k in range(1, n + 1):
        t = t * (half / k)
    s = t.copy()
    comp = np.zeros_like(x)
    tmax = np.abs(t)
    q = -(half * half)
    for k in range(1, 240):
        t = t * (q / (k * (n + k)))
        at = np.abs(t)
        np.maximum(tmax, at, out=tmax)
        if np.all(at <= 1e-18 * tmax):
            return s
        y = t - comp
        snew = s + y
        comp = (snew - s) - y
        s = snew
    raise NumericError("Bessel series did not settle for order %d" % n)


def _miller(n, x):
    # Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} from a seed
    # high above both n and x, then one division by the Neumann sum.
    # x must be a positive 1-D array.
    top = max(float(n), float(np.max(x)))
    start = int(top) + _MILLER_PAD + int(_MILLER_PAD_SQRT * math.sqrt(top + 1.0))
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-30)
    out = np.zeros_like(x)
    ssum = np.zeros_like(x)
    inv_x = 1.0 / x
    for k in range(start, 0, -1):
        jp, jc = jc, (2.0 * k) * inv_x * jc - jp
        if k - 1 == n:
            out = jc.copy()
        if k - 1 >= 2 and (k - 1) % 2 == 0:
            ssum += 2.0 * jc
        big = np.abs(jc) > _RESCALE_LIMIT
        if np.any(big):
            jc[big] *= _RESCALE
            jp[big] *= _RESCALE
            out[big] *= _RESCALE
            ssum[big] *= _RESCALE
    return out / (jc + ssum)


def _bessel_raw(n, x):
    # No order cap here; bessel_j_prime needs one order past ORDER_MAX.
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Bessel argument must be finite")
    flat = np.atleast_1d(arr).ravel()
    ax = np.abs(flat)
    out = np.empty_like(ax)
    ser = ax <= max(_SERIES_X, _SERIES_SLOPE * n)
    if ser.any():
        out[ser] = _series(n, ax[ser])
    rest = ~ser
    if rest.any():
        out[rest] = _miller(n, ax[rest])
    if n % 2 == 1:
        neg = flat < 0.0
        out[neg] = -out[neg]
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def bessel_j(n, x):
    """J_n(x) for integer order 0 <= n <= ORDER_MAX.

    Parameters
    ----------
    n : int
        Order.
    x : float or array_like
        Argument(s); may be negative, parity is applied.

    Returns
    -------
    float or ndarray matching the shape of ``x``.
    """
    n = _check_order(n)
    return _bessel_raw(n, x)


def bessel_j_prime(n, x):
    """dJ_n/dx via 2 J_n' = J_{n-1} - J_{n+1}, with J_{-1} = -J_1."""
    n = _check_order(n)
    if n == 0:
        return -_bessel_raw(1, x)
    return 0.5 * (_bessel_raw(n - 1, x) - _bessel_raw(n + 1, x))


def _check_order(n):
    if not isinstance(n, (int, np.integer)):
        raise TypeError("order must be an integer, got %r" % (n,))
    if n < 0 or n > ORDER_MAX:
        raise ConfigurationError(
            "order %d outside supported range [0, %d]" % (n, ORDER_MAX)
        )
    return int(n)


def _scalar_orders(orders, x):
    # One pure-float backward pass at scalar x > 0, recording every
    # requested order on the way down.  Used by the zero finder, where
    # per-call numpy overhead would dominate.
    top = max(max(orders), x)
    start = int(top) + _MILLER_PAD + int(_MILLER_PAD_SQRT * math.sqrt(top + 1.0))
    want = {}
    jp = 0.0
    jc = 1e-30
    ssum = 0.0
    inv_x = 1.0 / x
    for k in range(start, 0, -1):
        jp, jc = jc, (2.0 * k) * inv_x * jc - jp
        km1 = k - 1
        if km1 in orders:
            want[km1] = jc
        if km1 >= 2 and km1 % 2 == 0:
            ssum += 2.0 * jc
        if abs(jc) > _RESCALE_LIMIT:
            jc *= _RESCALE
            jp *= _RESCALE
            ssum *= _RESCALE
            for key in want:
                want[key] *= _RESCALE
    norm = jc + ssum
    return [want[k] / norm for k in orders]


def _zero_objective(n, x):
    # J_n and J_n' from a single backward pass.
    if n == 0:
        j0, j1 = _scalar_orders((0, 1), x)
        return j0, -j1
    a, b, c = _scalar_orders((n - 1, n, n + 1), x)
    return b, 0.5 * (a - c)


def _refine_zero(n, lo, hi):
    # Newton with a safeguarding bracket; falls back to bisection when
    # a step would leave the interval.
    flo, _ = _zero_objective(n, lo)
    fhi, _ = _zero_objective(n, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NumericError(
            "no sign change for J_%d on [%.17g, %.17g]" % (n, lo, hi)
        )
    for _ in range(8):
        mid = 0.5 * (lo + hi)
        fm, _ = _zero_objective(n, mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    x = 0.5 * (lo + hi)
    for _ in range(80):
        fx, d = _zero_objective(n, x)
        if fx == 0.0:
            return x
        if flo * fx < 0.0:
            hi = x
        else:
            lo, flo = x, fx
        xn = x - fx / d if d != 0.0 else 0.5 * (lo + hi)
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        step = xn - x
        x = xn
        if abs(step) <= max(1e-14, 4.0 * np.spacing(abs(x))):
            return x
    raise NumericError(
        "zero refinement for J_%d stalled near %.17g" % (n, x)
    )


class BesselZeroTable:
    """Memoized positive zeros j_{n,m} of J_n, indexed from m = 1.

    The table is filled on demand.  Lookups outside the declared bounds
    raise ConfigurationError; internal recursion may reach beyond m_max
    on lower rows, which is harmless since row zero needs no bracket
    from elsewhere.
    """

    def __init__(self, n_max=32, m_max=64):
        if not 0 <= n_max <= ORDER_MAX:
            raise ConfigurationError(
                "n_max %d outside [0, %d]" % (n_max, ORDER_MAX)
            )
        if m_max < 1:
            raise ConfigurationError("m_max must be >= 1, got %d" % m_max)
        self.n_max = int(n_max)
        self.m_max = int(m_max)
        self._cache = {}
        self._lock = threading.RLock()

    def zero(self, n, m):
        """The m-th positive zero of J_n (m >= 1)."""
        if not 0 <= n <= self.n_max:
            raise ConfigurationError(
                "row %d outside table bound n_max=%d" % (n, self.n_max)
            )
        if not 1 <= m <= self.m_max:
            raise ConfigurationError(
                "index %d outside table bound m_max=%d" % (m, self.m_max)
            )
        with self._lock:
            return self._get(int(n), int(m))

    def _get(self, n, m):
        hit = self._cache.get((n, m))
        if hit is not None:
            return hit
        if n == 0:
            beta = (m - 0.25) * math.pi
            seed = beta + 0.125 / beta
            lo, hi = seed - 0.6, seed + 0.6
        else:
            lo = self._get(n - 1, m)
            hi = self._get(n - 1, m + 1)
        root = _refine_zero(n, lo, hi)
        self._cache[(n, m)] = root
        return root

    def row(self, n, m_max=None):
        """Zeros j_{n,1..m_max} as an ndarray."""
        m_max = self.m_max if m_max is None else m_max
        return np.array([self.zero(n, m) for m in range(1, m_max + 1)])


_default_table = None
_default_table_lock = threading.Lock()


def default_zero_table():
    global _default_table
    with _default_table_lock:
        if _default_table is None:
            _default_table = BesselZeroTable()
    return _default_table


def bessel_zero(n, m):
    """j_{n,m} from the shared default table (n <= 32, m <= 64)."""
    return default_zero_table().zero(n, m)


def radial_orthogonality_check(n, m1, m2, rule, table=None):
    """integral_0^1 J_n(j_{n,m1} r) J_n(j_{n,m2} r) r dr by quadrature.

    The scaled Bessel family is orthogonal on (0, 1) with weight r, so
    distinct m give (numerically) zero while m1 == m2 returns the
    squared norm J_{n+1}(j_{n,m1})**2 / 2.  ``rule`` only needs the
    radial part of a disk rule.
    """
    table = table or default_zero_table()
    r = np.asarray(rule.radial_nodes)
    w = np.asarray(rule.radial_weights) * r
    a = bessel_j(n, table.zero(n, m1) * r)
    b = bessel_j(n, table.zero(n, m2) * r)
    return float(w @ (a * b))
