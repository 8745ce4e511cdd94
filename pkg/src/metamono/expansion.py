"""Expansion of metamonogenic fields in the basic family.

A field f is approximated by the truncated double sum
sum_n sum_m F_{n,m} c_{n,m} with quaternion coefficients on the right.
For angular orders n >= 2 the family is orthogonal and each coefficient
is a single inner product over a closed-form norm.  Orders 0 and 1 are
mutually coupled, so their coefficients come from the 2M x 2M
quaternionic Gram system, solved through the standard real expansion of
left multiplication (each quaternion entry becomes a 4 x 4 block).
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .basis import BasisIndex, FieldFunction, completed_function, eval_Fnm
from .bessel import default_zero_table
from .diskquad import _field_values, inner_product_values
from .errors import IllConditioningError, NumericError
from .gram import analytic_inner, basic_values_on_rule, norm2_analytic
from .quatnum import left_mul_matrix, qmul

_COND_LIMIT = 1e12


@dataclass
class ExpansionState:
    """Truncated expansion: parameter, cutoffs, coefficients, residual."""

    lam: float
    n_max: int
    m_max: int
    coeffs: Dict[BasisIndex, np.ndarray]
    residual_l2: float


def _ordered_indices(n_max, m_max):
    return [
        BasisIndex(n, m)
        for n in range(n_max + 1)
        for m in range(1, m_max + 1)
    ]


def _solve_block(G, rhs):
    """Solve the coupled Gram system, G (P, P, 4), rhs (P, 4) -> (P, 4).

    The normalized {0,1} family is nearly dependent: the smallest
    eigenvalue of its scaled Gram falls off exponentially in the radial
    cutoff and is below machine precision from about M = 10 on.  An
    exact solve would amplify noise without improving the fit, so the
    system is diagonally scaled and inverted on the eigenspace above a
    relative spectral cutoff.  Directions below the cutoff correspond
    to coefficient combinations whose fields are numerically zero in
    L2; dropping them leaves the projection itself unchanged to
    machine accuracy.  Only a spectrum with no usable directions at
    all raises IllConditioningError.
    """
    P = rhs.shape[0]
    diag = G[np.arange(P), np.arange(P), 0]
    if not np.all(diag > 0.0):
        raise IllConditioningError(
            "coupled block of %d functions has a nonpositive diagonal" % P
        )
    A = np.zeros((4 * P, 4 * P))
    for a in range(P):
        for b in range(P):
            A[4 * a: 4 * a + 4, 4 * b: 4 * b + 4] = left_mul_matrix(G[a, b])
    scale = np.repeat(np.sqrt(diag), 4)
    As = A / np.outer(scale, scale)
    w, Q = np.linalg.eigh(As)
    wmax = float(w[-1])
    if not wmax > 0.0:
        raise IllConditioningError(
            "coupled block of %d functions has no positive spectrum" % P
        )
    keep = w > wmax / _COND_LIMIT
    if not np.any(keep):
        raise IllConditioningError(
            "coupled block of %d functions entirely below the spectral cutoff" % P
        )
    bs = Q.T @ (rhs.reshape(-1) / scale)
    y = Q @ np.where(keep, bs / np.where(keep, w, 1.0), 0.0)
    return (y / scale).reshape(P, 4)


def _coefficients(indices, raw, table):
    # coupled block by Gram solve, orthogonal sector by plain division
    block = [i for i in indices if i.n <= 1]
    found = {}
    if block:
        G = np.empty((len(block), len(block), 4))
        for a, ia in enumerate(block):
            for b, ib in enumerate(block):
                G[a, b] = analytic_inner(ia, ib, table)
        sol = _solve_block(G, np.stack([raw[i] for i in block]))
        found.update(zip(block, sol))
    for i in indices:
        if i.n >= 2:
            found[i] = raw[i] / norm2_analytic(i.n, i.m, table)
    return {i: np.asarray(found[i]) for i in indices}


def _residual_l2(fv, vals, coeffs, rule):
    acc = np.zeros_like(fv)
    for i, c in coeffs.items():
        acc = acc + qmul(vals[i], c)
    r = fv - acc
    return float(np.sqrt(rule.weights @ np.sum(r * r, axis=-1)))


def project(f, lam, n_max, m_max, rule, table=None):
    """Best L2 approximation of f in the truncated span.

    f may be a FieldFunction (or any callable on DiskPoints) or a pair
    (f1, f2) of scalar fields, in which case the full quaternionic
    field is first rebuilt from that free data.
    """
    if n_max < 0 or m_max < 1:
        raise NumericError("need n_max >= 0 and m_max >= 1")
    if isinstance(f, tuple):
        f = completed_function(f[0], f[1], lam)
    table = table or default_zero_table()
    fv = _field_values(f, rule)
    indices = _ordered_indices(n_max, m_max)
    vals = {i: basic_values_on_rule(i, rule, table) for i in indices}
    raw = {i: inner_product_values(vals[i], fv, rule) for i in indices}
    coeffs = _coefficients(indices, raw, table)
    return ExpansionState(
        lam=float(lam),
        n_max=int(n_max),
        m_max=int(m_max),
        coeffs=coeffs,
        residual_l2=_residual_l2(fv, vals, coeffs, rule),
    )


def reconstruct(state, p, table=None):
    """Evaluate the truncated sum at p with right coefficients."""
    table = table or default_zero_table()
    acc = np.zeros(p.shape + (4,))
    for idx, c in state.coeffs.items():
        acc = acc + qmul(eval_Fnm(idx, p, table), c)
    return acc


def reconstruction(state, table=None):
    return FieldFunction(
        lambda p: reconstruct(state, p, table),
        lam=state.lam,
        label="reconstruction",
    )


def convergence_profile(f, lam, n_max, m_list, rule, table=None):
    """Residuals of project() over an increasing list of radial cutoffs.

    Node values of f and of the basis are computed once at the largest
    cutoff and reused, so the cost is one pass plus a small solve per
    entry.  Returns [(M, residual_l2), ...].
    """
    m_list = [int(m) for m in m_list]
    if not m_list or any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise NumericError("m_list must be nonempty and strictly increasing")
    if isinstance(f, tuple):
        f = completed_function(f[0], f[1], lam)
    table = table or default_zero_table()
    fv = _field_values(f, rule)
    top = _ordered_indices(n_max, m_list[-1])
    vals = {i: basic_values_on_rule(i, rule, table) for i in top}
    raw = {i: inner_product_values(vals[i], fv, rule) for i in top}
    out = []
    for M in m_list:
        indices = _ordered_indices(n_max, M)
        coeffs = _coefficients(indices, raw, table)
        out.append((M, _residual_l2(fv, vals, coeffs, rule)))
    return out
