"""Orthogonality audit of the basic family and the {0,1}-block algebra.

Outside the angular orders {0, 1} the basic functions are pairwise
orthogonal; within a fixed order the norm has the closed form
2 pi J_{n-1}(j_{n,m})^2, and the only nonvanishing cross products
couple order 0 to order 1 through a pure-i quaternion.  This module
holds those closed forms, compares them against quadrature, and
orthonormalizes the coupled block by right-coefficient Gram-Schmidt.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisIndex, FieldFunction, basic_function, combination
from .bessel import bessel_j, default_zero_table
from .diskquad import inner_product_values
from .errors import DegeneracyError, NumericError
from .quatnum import qconj, qmul

TWO_PI = 2.0 * math.pi


def norm2_analytic(n, m, table=None):
    """Closed-form squared norm of F_{n,m}: 2 pi J_{n-1}(j_{n,m})^2."""
    table = table or default_zero_table()
    lam = table.zero(n, m)
    b = bessel_j(1, lam) if n == 0 else bessel_j(n - 1, lam)
    return TWO_PI * b * b


def cross_inner_analytic(m1, m2, orientation=(0, 1), table=None):
    """The coupling <F_{0,m1}, F_{1,m2}> (or the (1,0) swap) in closed form.

    Always a pure-i quaternion; the denominator j_{0,.} - j_{1,.} never
    vanishes because zeros of J_0 and J_1 interlace strictly.
    """
    table = table or default_zero_table()
    if orientation == (0, 1):
        j0 = table.zero(0, m1)
        j1 = table.zero(1, m2)
        val = -TWO_PI * bessel_j(1, j0) * bessel_j(0, j1) / (j0 - j1)
    elif orientation == (1, 0):
        j1 = table.zero(1, m1)
        j0 = table.zero(0, m2)
        val = TWO_PI * bessel_j(0, j1) * bessel_j(1, j0) / (j0 - j1)
    else:
        raise NumericError("orientation must be (0,1) or (1,0)")
    return np.array([0.0, val, 0.0, 0.0])


def analytic_inner(idx1, idx2, table=None):
    """Closed-form <F_idx1, F_idx2>; zero whenever orthogonality applies."""
    n1, m1 = idx1
    n2, m2 = idx2
    if n1 == n2:
        if m1 == m2:
            return np.array([norm2_analytic(n1, m1, table), 0.0, 0.0, 0.0])
        return np.zeros(4)
    if {n1, n2} == {0, 1}:
        return cross_inner_analytic(m1, m2, orientation=(n1, n2), table=table)
    return np.zeros(4)


def values_on_rule(n, lam, rule):
    """Node values of F_n[lam] on a tensor rule, shape (node_count, 4).

    Exploits the product structure: the radial Bessel factors are
    evaluated once per radial node, the angular factors once per angle.
    """
    z = lam * rule.radial_nodes
    jn = np.atleast_1d(bessel_j(n, z))
    jm = -np.atleast_1d(bessel_j(1, z)) if n == 0 else np.atleast_1d(bessel_j(n - 1, z))
    th = rule.points.theta[: rule.ntheta]
    c1 = np.cos((n - 1) * th)
    s1 = np.sin((n - 1) * th)
    cn = np.cos(n * th)
    sn = np.sin(n * th)
    comps = np.stack(
        [
            np.outer(jm, c1),
            np.outer(jn, cn),
            np.outer(jn, sn),
            np.outer(-jm, s1),
        ],
        axis=-1,
    )
    return comps.reshape(rule.node_count, 4)


def basic_values_on_rule(idx, rule, table=None):
    n, m = idx
    table = table or default_zero_table()
    return values_on_rule(n, table.zero(n, m), rule)


@dataclass
class GramReport:
    """Quaternionic Gram matrix of a set of basic functions.

    ``matrix`` and ``analytic`` have shape (P, P, 4).  ``max_offdiag``
    is the largest |entry| over pairs that the orthogonality statement
    says must vanish (distinct indices, angular orders not {0,1});
    ``deviations`` holds the componentwise max |quadrature - closed
    form| per pair, and ``max_deviation`` its overall max.
    """

    indices: list
    matrix: np.ndarray
    analytic: np.ndarray
    deviations: np.ndarray
    max_offdiag: float
    max_deviation: float


def gram_matrix(indices, rule, table=None):
    """Pairwise inner products of F_{n,m} over ``indices`` by quadrature."""
    indices = [BasisIndex(*i) for i in indices]
    if len(set(indices)) != len(indices):
        raise NumericError("gram indices must be distinct")
    table = table or default_zero_table()
    P = len(indices)
    vals = np.stack([basic_values_on_rule(i, rule, table) for i in indices])
    A = vals.transpose(2, 0, 1)                    # (4, P, N)
    B = (vals * rule.weights[None, :, None]).transpose(2, 1, 0)  # (4, N, P)
    M = np.empty((P, P, 4))
    M[..., 0] = (A[0] @ B[0] + A[1] @ B[1]) + (A[2] @ B[2] + A[3] @ B[3])
    M[..., 1] = (A[0] @ B[1] + A[3] @ B[2]) - (A[1] @ B[0] + A[2] @ B[3])
    M[..., 2] = (A[0] @ B[2] + A[1] @ B[3]) - (A[2] @ B[0] + A[3] @ B[1])
    M[..., 3] = (A[0] @ B[3] + A[2] @ B[1]) - (A[1] @ B[2] + A[3] @ B[0])
    # diagonals through the elementwise path, whose grouping cancels the
    # vector part exactly; mirror the lower triangle so conjugate
    # symmetry holds exactly as well
    for a in range(P):
        M[a, a] = inner_product_values(vals[a], vals[a], rule)
        for b in range(a + 1, P):
            M[b, a] = qconj(M[a, b])
    analytic = np.empty_like(M)
    for a, ia in enumerate(indices):
        for b, ib in enumerate(indices):
            analytic[a, b] = analytic_inner(ia, ib, table)
    deviations = np.max(np.abs(M - analytic), axis=-1)
    mags = np.sqrt(np.sum(M * M, axis=-1))
    max_off = 0.0
    for a, ia in enumerate(indices):
        for b, ib in enumerate(indices):
            if (a != b) and {ia.n, ib.n} != {0, 1} and ia != ib:
                max_off = max(max_off, mags[a, b])
    return GramReport(
        indices=indices,
        matrix=M,
        analytic=analytic,
        deviations=deviations,
        max_offdiag=max_off,
        max_deviation=float(deviations.max()),
    )


def block_indices(m_max):
    """The coupled block, interleaved: (0,1),(1,1),(0,2),...,(1,m_max)."""
    out = []
    for m in range(1, m_max + 1):
        out.append(BasisIndex(0, m))
        out.append(BasisIndex(1, m))
    return out


def block_gram_analytic(m_max, table=None):
    idx = block_indices(m_max)
    G = np.empty((len(idx), len(idx), 4))
    for a, ia in enumerate(idx):
        for b, ib in enumerate(idx):
            G[a, b] = analytic_inner(ia, ib, table)
    return G


def _coef_inner(G, ca, cb):
    # <sum_a F_a ca_a, sum_b F_b cb_b> given the Gram matrix G
    tmp = qmul(G, cb[None, :, :]).sum(axis=1)
    return qmul(qconj(ca), tmp).sum(axis=0)


def gram_schmidt_coefficients(G):
    """Right-coefficient modified Gram-Schmidt in coefficient space.

    G is the (P, P, 4) Gram matrix of the input functions.  Returns C of
    the same shape: row k holds the coefficients of the k-th
    orthonormal output in terms of the inputs.  Raises DegeneracyError
    when a pivot collapses below 1e-12.
    """
    G = np.asarray(G, dtype=float)
    P = G.shape[0]
    C = np.zeros((P, P, 4))
    for k in range(P):
        v = np.zeros((P, 4))
        v[k, 0] = 1.0
        for l in range(k):
            proj = _coef_inner(G, C[l], v)
            v = v - qmul(C[l], proj[None, :])
        n2 = _coef_inner(G, v, v)[0]
        if not n2 > 0.0 or math.sqrt(max(n2, 0.0)) < 1e-12:
            raise DegeneracyError(
                "pivot %d numerically dependent (squared norm %.3g)" % (k, n2)
            )
        C[k] = v / math.sqrt(n2)
    return C


def orthonormalize_block(m_max, rule=None, table=None):
    """Orthonormal functions spanning the {0,1} block up to m_max.

    The block Gram matrix is known in closed form, so the elimination
    itself needs no quadrature.  When a rule is passed, the result is
    audited against it: the quadrature Gram of the outputs must be the
    identity within 1e-8, else NumericError.
    """
    if m_max < 1:
        raise NumericError("m_max must be >= 1")
    table = table or default_zero_table()
    idx = block_indices(m_max)
    G = block_gram_analytic(m_max, table)
    C = gram_schmidt_coefficients(G)
    base = [basic_function(i, table) for i in idx]
    funcs = [
        combination(base, C[k], label="E%d" % (k + 1)) for k in range(len(idx))
    ]
    if rule is not None:
        vals = np.stack([basic_values_on_rule(i, rule, table) for i in idx])
        dev = 0.0
        evals = []
        for k in range(len(idx)):
            acc = np.zeros((rule.node_count, 4))
            for a in range(len(idx)):
                acc = acc + qmul(vals[a], C[k, a])
            evals.append(acc)
        for a in range(len(idx)):
            for b in range(len(idx)):
                got = inner_product_values(evals[a], evals[b], rule)
                want = np.array([1.0 if a == b else 0.0, 0.0, 0.0, 0.0])
                dev = max(dev, float(np.max(np.abs(got - want))))
        if dev > 1e-8:
            raise NumericError(
                "orthonormalized block fails quadrature audit: deviation %.3g" % dev
            )
    return funcs
