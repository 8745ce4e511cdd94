"""Acceptance suite: the nine numerical contracts, one test each.

Every test runs the corresponding check family at the default
configuration, prints a single PASS/FAIL line with the headline
measurement, and pins the tolerances and fixed parameters it relies on
so that configuration drift fails here first.
"""

import time

import pytest

from metamono import DEFAULT_TOLERANCES, RunConfig
from metamono import verify as V
from metamono.verify import _CHECKS, _Shared


@pytest.fixture(scope="module")
def cfg():
    return RunConfig().validate()


@pytest.fixture(scope="module")
def shared(cfg):
    return _Shared(cfg)


def run(name, cfg, shared, budget=None):
    t0 = time.monotonic()
    result = _CHECKS[name](cfg, shared)
    elapsed = time.monotonic() - t0
    return result, elapsed, budget


def report(num, label, result, detail):
    line = "%s criterion %d: %s  (%s)" % (
        "PASS" if result.passed else "FAIL", num, label, detail,
    )
    print(line)
    assert result.passed, line


def test_criterion_1_bessel_correctness(cfg, shared):
    """Recurrence residuals below 1e-11 on a 500-point grid up to order
    20, and every tabulated zero annihilates its function to 1e-12."""
    assert DEFAULT_TOLERANCES["bessel_recurrence"] == 1e-11
    assert DEFAULT_TOLERANCES["bessel_zero"] == 1e-12
    result, elapsed, budget = run("bessel", cfg, shared, budget=5.0)
    m = result.measured
    report(1, "bessel correctness", result,
           "three-term %.2e, derivative %.2e, zeros %.2e, %.1fs"
           % (m["three_term_recurrence_max"], m["derivative_recurrence_max"],
              m["zero_residual_max"], elapsed))
    assert m["three_term_recurrence_max"] < 1e-11
    assert m["derivative_recurrence_max"] < 1e-11
    assert m["zero_residual_max"] < 1e-12
    assert elapsed < budget


def test_criterion_2_kernel_property(cfg, shared):
    """Dirac residuals of the basic functions on a 21x21 interior grid
    shrink by 4 +/- 20% when h halves, and sit below 1e-5 at h = 1e-4."""
    assert V._GRID_SIDE == 21
    assert DEFAULT_TOLERANCES["kernel_abs"] == 1e-5
    assert DEFAULT_TOLERANCES["kernel_ratio_band"] == 0.2
    result, elapsed, budget = run("kernel", cfg, shared, budget=10.0)
    m = result.measured
    report(2, "kernel property", result,
           "ratios [%.3f, %.3f], abs %.2e, %.1fs"
           % (m["ratio_min"], m["ratio_max"], m["abs_residual_max"], elapsed))
    assert 3.2 < m["ratio_min"] and m["ratio_max"] < 4.8
    assert m["abs_residual_max"] < 1e-5
    assert elapsed < budget


def test_criterion_3_orthogonality(cfg, shared):
    """Inner products of distinct non-coupled pairs up to (6, 4) vanish
    to 1e-8 relative to the geometric mean of the norms."""
    assert (cfg.quad_nr, cfg.quad_ntheta) == (200, 256)
    assert DEFAULT_TOLERANCES["orthogonality"] == 1e-8
    result, elapsed, budget = run("orthogonality", cfg, shared, budget=60.0)
    m = result.measured
    report(3, "orthogonality", result,
           "max offdiag/norms %.2e, %.1fs" % (m["max_offdiag_over_norms"], elapsed))
    assert m["max_offdiag_over_norms"] < 1e-8
    assert elapsed < budget


def test_criterion_4_norms(cfg, shared):
    """Quadrature norms match the closed form to 1e-8 relative, and the
    two closed forms agree to 1e-10, up to (6, 4)."""
    assert DEFAULT_TOLERANCES["norm_rel"] == 1e-8
    assert DEFAULT_TOLERANCES["norm_pair"] == 1e-10
    result, _, _ = run("norms", cfg, shared)
    m = result.measured
    report(4, "norms", result,
           "relative %.2e, closed-form gap %.2e"
           % (m["max_relative_deviation"], m["max_closed_form_gap"]))
    assert m["max_relative_deviation"] < 1e-8
    assert m["max_closed_form_gap"] < 1e-10


def test_criterion_5_cross_products(cfg, shared):
    """The coupled order-0/order-1 products match the pure-i closed
    form componentwise to 1e-8 for m1, m2 up to 4."""
    assert DEFAULT_TOLERANCES["cross_abs"] == 1e-8
    result, _, _ = run("cross_products", cfg, shared)
    m = result.measured
    report(5, "cross products", result,
           "componentwise %.2e, non-i %.2e"
           % (m["max_componentwise_deviation"], m["max_non_i_component"]))
    assert m["max_componentwise_deviation"] < 1e-8
    assert m["max_non_i_component"] < 1e-8


def test_criterion_6_completeness(cfg, shared):
    """Projection residuals of two smooth off-grid targets are
    non-increasing over M in {5, 10, 20, 40} and end below 1e-3 of the
    target norm."""
    assert V._COMPLETENESS_M == (5, 10, 20, 40)
    assert DEFAULT_TOLERANCES["completeness_rel"] == 1e-3
    result, elapsed, budget = run("completeness", cfg, shared, budget=120.0)
    details = []
    for label, entry in result.measured.items():
        resids = entry["residuals"]
        assert all(b <= a for a, b in zip(resids, resids[1:]))
        assert entry["final_over_norm"] < 1e-3
        details.append("%s %.2e" % (label, entry["final_over_norm"]))
    report(6, "completeness", result, ", ".join(details) + ", %.1fs" % elapsed)
    assert elapsed < budget


def test_criterion_7_gram_schmidt_block(cfg, shared):
    """Orthonormalizing the coupled block at M = 4 yields the identity
    Gram to 1e-8 and outputs orthogonal to every higher order to 1e-8."""
    assert DEFAULT_TOLERANCES["gram_schmidt"] == 1e-8
    result, _, _ = run("gram_schmidt", cfg, shared)
    m = result.measured
    report(7, "block orthonormalization", result,
           "identity %.2e, higher-order overlap %.2e"
           % (m["identity_deviation"], m["higher_order_overlap"]))
    assert m["identity_deviation"] < 1e-8
    assert m["higher_order_overlap"] < 1e-8


def test_criterion_8_evolution(cfg, shared):
    """Single- and three-mode states: first-order residual below 1e-5
    at h = 1e-4 for t in {0, 0.2}, exact initial rate within 1e-8 of
    the time-difference oracle, second-order residual below 5e-5 at
    h = 1e-3, and both negative controls above 1e-2."""
    assert V._TIMEMT_TIMES == (0.0, 0.2)
    assert cfg.fd_h1 == 1e-4 and cfg.fd_h2 == 1e-3
    assert DEFAULT_TOLERANCES["evolution_dirac"] == 1e-5
    assert DEFAULT_TOLERANCES["evolution_derivative"] == 1e-8
    assert DEFAULT_TOLERANCES["evolution_wave"] == 5e-5
    assert DEFAULT_TOLERANCES["negative_control"] == 1e-2
    result, _, _ = run("evolution", cfg, shared)
    m = result.measured
    report(8, "evolution", result,
           "first-order %.2e, rate %.2e, second-order %.2e, controls %.2g/%.2g"
           % (m["first_order_residual_max"], m["initial_derivative_deviation"],
              m["wave_residual_max"], m["wrong_lambda_residual"],
              m["wrong_exponent_residual"]))
    assert m["first_order_residual_max"] < 1e-5
    assert m["initial_derivative_deviation"] < 1e-8
    assert m["wave_residual_max"] < 5e-5
    assert m["wrong_lambda_residual"] > 1e-2
    assert m["wrong_exponent_residual"] > 1e-2


def test_criterion_9_structure(cfg, shared):
    """Angle-reflection parity of the components holds to 1e-10 and the
    seeded high mode emerges at a strictly positive time."""
    assert DEFAULT_TOLERANCES["symmetry"] == 1e-10
    result, _, _ = run("symmetry", cfg, shared)
    m = result.measured
    report(9, "component symmetry and emergence", result,
           "even %.2e, odd %.2e, t* = %g"
           % (m["even_component_deviation"], m["odd_component_deviation"],
              m["emergence_time"]))
    assert m["even_component_deviation"] < 1e-10
    assert m["odd_component_deviation"] < 1e-10
    assert m["emergence_time"] > 0.0
