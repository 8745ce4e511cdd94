"""Quaternion algebra: multiplication table, conjugation, inner-product helper."""

import numpy as np
import pytest

from metamono.quatnum import (
    COMPONENT_NAMES,
    ONE,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    conj_mul,
    left_mul_matrix,
    qabs,
    qabs2,
    qconj,
    qmul,
    quat,
    scalar_part,
    vector_part,
)

RNG = np.random.default_rng(20240911)


def _random(shape=()):
    return RNG.standard_normal(shape + (4,))


def test_component_order():
    assert COMPONENT_NAMES == ("s", "i", "j", "k")


def test_unit_squares():
    for u in (UNIT_I, UNIT_J, UNIT_K):
        assert np.array_equal(qmul(u, u), -ONE)


def test_unit_products():
    assert np.array_equal(qmul(UNIT_I, UNIT_J), UNIT_K)
    assert np.array_equal(qmul(UNIT_J, UNIT_K), UNIT_I)
    assert np.array_equal(qmul(UNIT_K, UNIT_I), UNIT_J)
    assert np.array_equal(qmul(UNIT_J, UNIT_I), -UNIT_K)
    assert np.array_equal(qmul(UNIT_K, UNIT_J), -UNIT_I)
    assert np.array_equal(qmul(UNIT_I, UNIT_K), -UNIT_J)


def test_one_is_identity():
    q = _random((5,))
    assert np.array_equal(qmul(ONE, q), q)
    assert np.array_equal(qmul(q, ONE), q)


def test_quat_builder():
    q = quat(1.0, 2.0, 3.0, 4.0)
    assert q.shape == (4,)
    assert np.array_equal(q, [1.0, 2.0, 3.0, 4.0])


def test_associativity():
    a, b, c = _random((40,)), _random((40,)), _random((40,))
    left = qmul(qmul(a, b), c)
    right = qmul(a, qmul(b, c))
    assert np.max(np.abs(left - right)) < 1e-13


def test_noncommutative_in_general():
    a = quat(0.0, 1.0, 0.0, 0.0)
    b = quat(0.0, 0.0, 1.0, 0.0)
    assert not np.array_equal(qmul(a, b), qmul(b, a))


def test_conj_is_antiautomorphism():
    a, b = _random((30,)), _random((30,))
    left = qconj(qmul(a, b))
    right = qmul(qconj(b), qconj(a))
    assert np.max(np.abs(left - right)) < 1e-13


def test_conj_involution():
    q = _random((7,))
    assert np.array_equal(qconj(qconj(q)), q)


def test_scalar_vector_split():
    q = _random((6,))
    assert np.array_equal(scalar_part(q), q[..., 0])
    v = vector_part(q)
    assert v.shape == (6, 3)
    assert np.array_equal(v, q[..., 1:])


def test_abs_multiplicative():
    a, b = _random((25,)), _random((25,))
    assert np.max(np.abs(qabs(qmul(a, b)) - qabs(a) * qabs(b))) < 1e-12


def test_abs2_is_conj_product():
    q = _random((9,))
    prod = qmul(qconj(q), q)
    assert np.max(np.abs(prod[..., 0] - qabs2(q))) < 1e-13
    assert np.max(np.abs(prod[..., 1:])) < 1e-13


def test_conj_mul_matches_explicit():
    a, b = _random((20,)), _random((20,))
    assert np.max(np.abs(conj_mul(a, b) - qmul(qconj(a), b))) < 1e-13


def test_conj_mul_swap_is_exact_conjugate():
    # the symmetric grouping makes this hold bitwise, not just approximately
    a, b = _random((50,)), _random((50,))
    assert np.array_equal(conj_mul(b, a), qconj(conj_mul(a, b)))


def test_left_mul_matrix_reproduces_product():
    for _ in range(10):
        a, b = _random(), _random()
        assert np.max(np.abs(left_mul_matrix(a) @ b - qmul(a, b))) < 1e-13


def test_broadcasting():
    a = _random((3, 1))
    b = _random((1, 5))
    out = qmul(a, b)
    assert out.shape == (3, 5, 4)
    for r in range(3):
        for c in range(5):
            assert np.allclose(out[r, c], qmul(a[r, 0], b[0, c]), atol=1e-15)
