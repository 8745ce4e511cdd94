"""Quaternion arithmetic on numpy arrays.

A quaternion q = q0 + q1*i + q2*j + q3*k is stored as the last axis of a
float array of shape (..., 4), component order (scalar, i, j, k).  All
routines broadcast over leading axes.  Multiplication is the Hamilton
product and is not commutative; coefficient multiplication elsewhere in
the package is always on the right.
"""

import numpy as np

COMPONENT_NAMES = ("s", "i", "j", "k")

ONE = np.array([1.0, 0.0, 0.0, 0.0])
UNIT_I = np.array([0.0, 1.0, 0.0, 0.0])
UNIT_J = np.array([0.0, 0.0, 1.0, 0.0])
UNIT_K = np.array([0.0, 0.0, 0.0, 1.0])


def quat(s=0.0, i=0.0, j=0.0, k=0.0):
    """Build a quaternion array from components, broadcasting as needed."""
    s, i, j, k = np.broadcast_arrays(*map(np.asarray, (s, i, j, k)))
    return np.stack([s, i, j, k], axis=-1).astype(float)


def qmul(a, b):
    """Hamilton product a*b, broadcasting over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a):
    """Quaternion conjugate: negate the vector part."""
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] = -out[..., 1:]
    return out


def scalar_part(a):
    return np.asarray(a, dtype=float)[..., 0]


def vector_part(a):
    """The (i, j, k) components, shape (..., 3)."""
    return np.asarray(a, dtype=float)[..., 1:]


def qabs2(a):
    """Squared norm |a|^2 = a * conj(a), a nonnegative real array."""
    a = np.asarray(a, dtype=float)
    return np.sum(a * a, axis=-1)


def qabs(a):
    return np.sqrt(qabs2(a))


def conj_mul(a, b):
    """conj(a) * b, the pointwise integrand of the right inner product.

    Expanded directly instead of qmul(qconj(a), b) to skip the copy.
    The products are grouped so that swapping the arguments and
    conjugating gives the bit-identical result, making the conjugate
    symmetry of the discrete inner product exact, not just close.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            (a0 * b0 + a1 * b1) + (a2 * b2 + a3 * b3),
            (a0 * b1 + a3 * b2) - (a1 * b0 + a2 * b3),
            (a0 * b2 + a1 * b3) - (a2 * b0 + a3 * b1),
            (a0 * b3 + a2 * b1) - (a1 * b2 + a3 * b0),
        ],
        axis=-1,
    )


def left_mul_matrix(q):
    """4x4 real matrix L with L @ v = components of q * v.

    Used to expand quaternionic linear systems over the reals.
    """
    q0, q1, q2, q3 = np.asarray(q, dtype=float)
    return np.array(
        [
            [q0, -q1, -q2, -q3],
            [q1, q0, -q3, q2],
            [q2, q3, q0, -q1],
            [q3, -q2, q1, q0],
        ]
    )
