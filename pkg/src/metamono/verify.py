"""Numerical verification of every library-level claim in one run.

Nine check families mirror the library surface: Bessel recurrences and
zeros, the first-order kernel property, orthogonality, norms, the
coupled {0,1} cross products, expansion convergence, the orthonormal
block, wave evolution, and the structural grid symmetries plus
high-mode emergence.  Each family reports pass/fail with the measured
quantities; the bundle serializes to deterministic JSON.
"""

import json
import math
import os
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from .basis import (
    BasisIndex,
    DiskPoint,
    basic_function,
    dirac_residual,
    eval_Fnm,
    standard_function,
)
from .bessel import bessel_j, bessel_j_prime, default_zero_table
from .config import RunConfig
from .errors import ConfigurationError, MetamonoError
from .diskquad import inner_product_values, make_rule, norm2
from .expansion import convergence_profile
from .evolution import (
    WaveState,
    evolve_eval,
    initial_time_derivative,
    mode_emergence,
    timemt_residual,
    wick_wave_residual,
)
from .gram import (
    basic_values_on_rule,
    block_gram_analytic,
    block_indices,
    gram_matrix,
    gram_schmidt_coefficients,
    norm2_analytic,
)
from .quatnum import qabs, qmul

CHECK_NAMES = (
    "bessel",
    "kernel",
    "orthogonality",
    "norms",
    "cross_products",
    "completeness",
    "gram_schmidt",
    "evolution",
    "symmetry",
)

# interior evaluation grid shared by the pointwise residual checks
_GRID_HALF = 0.9
_GRID_SIDE = 21

_COMPLETENESS_TARGETS = ((0, 1.7), (1, 2.3))
_COMPLETENESS_M = (5, 10, 20, 40)

_EVOLUTION_STATES = (
    ("single", {(1, 1): (1.0, 0.0, 0.0, 0.0)}),
    (
        "three_mode",
        {
            (0, 1): (1.0, 0.5, 0.0, 0.0),
            (1, 1): (0.0, 0.0, 1.0, 0.0),
            (2, 1): (0.1, 0.0, 0.0, -0.05),
        },
    ),
)

_TIMEMT_TIMES = (0.0, 0.2)
_WICK_TIMES = (0.0, 0.05)

_EMERGENCE_LOW = (0, 1)
_EMERGENCE_HIGH = (6, 3)
_EMERGENCE_SEED = 1e-3
_EMERGENCE_TIMES = np.linspace(0.0, 1.5, 31)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: Dict[str, object]
    notes: List[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    results: List[CheckResult]
    config: RunConfig

    @property
    def all_passed(self):
        return all(r.passed for r in self.results)

    def to_json(self):
        payload = {
            "all_passed": self.all_passed,
            "checks": [
                {
                    "name": r.name,
                    "passed": bool(r.passed),
                    "measured": _jsonable(r.measured),
                    "notes": list(r.notes),
                }
                for r in self.results
            ],
            "config": _jsonable(self.config.as_key_values()),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


class _Shared:
    """Lazily built heavyweight objects reused across check families."""

    def __init__(self, cfg):
        self.cfg = cfg
        self._rule = None
        self._points = None
        self._gram = None
        self.profiles = []
        self.emergence = None

    @property
    def table(self):
        return default_zero_table()

    @property
    def rule(self):
        if self._rule is None:
            self._rule = make_rule(self.cfg.quad_nr, self.cfg.quad_ntheta)
        return self._rule

    @property
    def points(self):
        if self._points is None:
            g = np.linspace(-_GRID_HALF, _GRID_HALF, _GRID_SIDE)
            X, Y = np.meshgrid(g, g)
            keep = np.hypot(X, Y) <= _GRID_HALF
            self._points = DiskPoint.from_cartesian(X[keep], Y[keep])
        return self._points

    @property
    def gram_report(self):
        if self._gram is None:
            indices = [
                BasisIndex(n, m) for n in range(7) for m in range(1, 5)
            ]
            self._gram = gram_matrix(indices, self.rule, self.table)
        return self._gram


def _check_bessel(cfg, shared):
    tol = cfg.tol
    xs = np.linspace(0.1, 50.0, 500)
    three_term = 0.0
    derivative = 0.0
    for n in range(0, 21):
        jm = -bessel_j(1, xs) if n == 0 else bessel_j(n - 1, xs)
        jp = bessel_j(n + 1, xs)
        if n >= 1:
            r = (2.0 * n / xs) * bessel_j(n, xs) - jm - jp
            three_term = max(three_term, float(np.max(np.abs(r))))
        r = 2.0 * bessel_j_prime(n, xs) - jm + jp
        derivative = max(derivative, float(np.max(np.abs(r))))
    table = shared.table
    zero_residual = 0.0
    interlaced = True
    for n in range(11):
        for m in range(1, 11):
            z = table.zero(n, m)
            zero_residual = max(zero_residual, abs(bessel_j(n, z)))
            if n < 10:
                interlaced = interlaced and z < table.zero(n + 1, m) < table.zero(n, m + 1)
    passed = (
        three_term < tol["bessel_recurrence"]
        and derivative < tol["bessel_recurrence"]
        and zero_residual < tol["bessel_zero"]
        and interlaced
    )
    return CheckResult(
        "bessel",
        passed,
        {
            "three_term_recurrence_max": three_term,
            "derivative_recurrence_max": derivative,
            "zero_residual_max": zero_residual,
            "interlacing_holds": interlaced,
        },
    )


def _check_kernel(cfg, shared):
    tol = cfg.tol
    p = shared.points
    table = shared.table
    band = tol["kernel_ratio_band"]
    lo, hi = 4.0 * (1.0 - band), 4.0 * (1.0 + band)
    worst_abs = 0.0
    ratios = []
    for n in range(6):
        for m in range(1, 4):
            f = basic_function(BasisIndex(n, m), table)
            lam = table.zero(n, m)
            r_h = float(np.max(qabs(dirac_residual(f, lam, p, cfg.fd_h2))))
            r_half = float(np.max(qabs(dirac_residual(f, lam, p, 0.5 * cfg.fd_h2))))
            r_fine = float(np.max(qabs(dirac_residual(f, lam, p, cfg.fd_h1))))
            ratios.append(r_h / r_half)
            worst_abs = max(worst_abs, r_fine)
    in_band = all(lo <= q <= hi for q in ratios)
    passed = in_band and worst_abs < tol["kernel_abs"]
    return CheckResult(
        "kernel",
        passed,
        {
            "ratio_min": min(ratios),
            "ratio_max": max(ratios),
            "ratio_band": [lo, hi],
            "abs_residual_max": worst_abs,
        },
    )


def _check_orthogonality(cfg, shared):
    report = shared.gram_report
    diag = np.array([report.matrix[a, a, 0] for a in range(len(report.indices))])
    worst_ratio = 0.0
    for a, ia in enumerate(report.indices):
        for b, ib in enumerate(report.indices):
            if a == b or {ia.n, ib.n} == {0, 1} or ia == ib:
                continue
            mag = float(np.sqrt(np.sum(report.matrix[a, b] ** 2)))
            worst_ratio = max(worst_ratio, mag / math.sqrt(diag[a] * diag[b]))
    passed = worst_ratio < cfg.tol["orthogonality"]
    return CheckResult(
        "orthogonality",
        passed,
        {
            "max_offdiag_over_norms": worst_ratio,
            "max_offdiag_abs": report.max_offdiag,
        },
    )


def _check_norms(cfg, shared):
    tol = cfg.tol
    report = shared.gram_report
    table = shared.table
    max_rel = 0.0
    max_pair = 0.0
    for a, ia in enumerate(report.indices):
        ref = norm2_analytic(ia.n, ia.m, table)
        max_rel = max(max_rel, abs(report.matrix[a, a, 0] - ref) / ref)
        z = table.zero(ia.n, ia.m)
        below = -bessel_j(1, z) if ia.n == 0 else bessel_j(ia.n - 1, z)
        above = bessel_j(ia.n + 1, z)
        gap = abs(2.0 * math.pi * below ** 2 - 2.0 * math.pi * above ** 2)
        max_pair = max(max_pair, gap)
    passed = max_rel < tol["norm_rel"] and max_pair < tol["norm_pair"]
    return CheckResult(
        "norms",
        passed,
        {"max_relative_deviation": max_rel, "max_closed_form_gap": max_pair},
    )


def _check_cross_products(cfg, shared):
    tol = cfg.tol
    report = shared.gram_report
    pos = {idx: a for a, idx in enumerate(report.indices)}
    max_dev = 0.0
    max_non_i = 0.0
    for m1 in range(1, 5):
        for m2 in range(1, 5):
            for a, b in (
                (pos[BasisIndex(0, m1)], pos[BasisIndex(1, m2)]),
                (pos[BasisIndex(1, m1)], pos[BasisIndex(0, m2)]),
            ):
                max_dev = max(max_dev, float(report.deviations[a, b]))
                q = report.matrix[a, b]
                max_non_i = max(max_non_i, abs(q[0]), abs(q[2]), abs(q[3]))
    passed = max_dev < tol["cross_abs"] and max_non_i < tol["cross_abs"]
    return CheckResult(
        "cross_products",
        passed,
        {"max_componentwise_deviation": max_dev, "max_non_i_component": max_non_i},
    )


def _check_completeness(cfg, shared):
    tol = cfg.tol
    rule = shared.rule
    table = shared.table
    shared.profiles = []
    measured = {}
    passed = True
    for n, lam in _COMPLETENESS_TARGETS:
        f = standard_function(n, lam)
        fnorm = math.sqrt(norm2(f, rule))
        profile = convergence_profile(f, lam, 1, _COMPLETENESS_M, rule, table)
        residuals = [r for _, r in profile]
        monotone = all(b <= a for a, b in zip(residuals, residuals[1:]))
        final_ok = residuals[-1] < tol["completeness_rel"] * fnorm
        passed = passed and monotone and final_ok
        label = "F%d[%g]" % (n, lam)
        shared.profiles.append((label, profile))
        measured[label] = {
            "residuals": residuals,
            "norm": fnorm,
            "monotone": monotone,
            "final_over_norm": residuals[-1] / fnorm,
        }
    return CheckResult("completeness", passed, measured)


def _check_gram_schmidt(cfg, shared):
    tol = cfg.tol
    rule = shared.rule
    table = shared.table
    idx = block_indices(4)
    C = gram_schmidt_coefficients(block_gram_analytic(4, table))
    vals = [basic_values_on_rule(i, rule, table) for i in idx]
    outputs = []
    for k in range(len(idx)):
        acc = np.zeros((rule.node_count, 4))
        for a in range(len(idx)):
            acc = acc + qmul(vals[a], C[k, a])
        outputs.append(acc)
    identity_dev = 0.0
    for a in range(len(outputs)):
        for b in range(len(outputs)):
            got = inner_product_values(outputs[a], outputs[b], rule)
            got[0] -= 1.0 if a == b else 0.0
            identity_dev = max(identity_dev, float(np.max(np.abs(got))))
    high_dev = 0.0
    for n in range(2, 7):
        for m in range(1, 5):
            fv = basic_values_on_rule(BasisIndex(n, m), rule, table)
            for out in outputs:
                ip = inner_product_values(out, fv, rule)
                high_dev = max(high_dev, float(np.max(np.abs(ip))))
    passed = identity_dev < tol["gram_schmidt"] and high_dev < tol["gram_schmidt"]
    return CheckResult(
        "gram_schmidt",
        passed,
        {"identity_deviation": identity_dev, "higher_order_overlap": high_dev},
    )


def _wrong_exponent_residual(state, p, t, h, table):
    # evolve every mode at 1.5x its true rate, apply the true operator
    def v(pp, tt):
        acc = np.zeros(pp.shape + (4,))
        for idx, c in state.coeffs.items():
            e = 1.5 * table.zero(idx.n, idx.m) * tt / state.k
            acc = acc + qmul(eval_Fnm(idx, pp, table), c) * math.exp(e)
        return acc
    lap = (
        v(p.shifted(dx=h), t)
        + v(p.shifted(dx=-h), t)
        + v(p.shifted(dy=h), t)
        + v(p.shifted(dy=-h), t)
        - 4.0 * v(p, t)
    ) / h**2
    dtt = (v(p, t + h) - 2.0 * v(p, t) + v(p, t - h)) / h**2
    return float(np.max(qabs(lap + state.k**2 * dtt)))


def _check_evolution(cfg, shared):
    tol = cfg.tol
    p = shared.points
    table = shared.table
    h1, h2 = cfg.fd_h1, cfg.fd_h2
    timemt_max = 0.0
    wick_max = 0.0
    deriv_max = 0.0
    states = {}
    for name, coeffs in _EVOLUTION_STATES:
        state = WaveState({BasisIndex(*k): np.array(c) for k, c in coeffs.items()})
        states[name] = state
        for t in _TIMEMT_TIMES:
            r = timemt_residual(state, p, t, h_space=h1, h_time=h1, table=table)
            timemt_max = max(timemt_max, float(np.max(qabs(r))))
        for t in _WICK_TIMES:
            r = wick_wave_residual(state, p, t, h=h2, table=table)
            wick_max = max(wick_max, float(np.max(qabs(r))))
        ht = 1e-5
        fd = (evolve_eval(state, p, ht, table) - evolve_eval(state, p, -ht, table)) / (
            2.0 * ht
        )
        dev = fd - initial_time_derivative(state, p, table)
        deriv_max = max(deriv_max, float(np.max(qabs(dev))))
    f = basic_function(BasisIndex(1, 1), table)
    neg_lambda = float(
        np.max(qabs(dirac_residual(f, 1.05 * table.zero(1, 1), p, h1)))
    )
    neg_exponent = _wrong_exponent_residual(states["single"], p, 0.1, h2, table)
    passed = (
        timemt_max < tol["evolution_dirac"]
        and deriv_max < tol["evolution_derivative"]
        and wick_max < tol["evolution_wave"]
        and neg_lambda > tol["negative_control"]
        and neg_exponent > tol["negative_control"]
    )
    return CheckResult(
        "evolution",
        passed,
        {
            "first_order_residual_max": timemt_max,
            "initial_derivative_deviation": deriv_max,
            "wave_residual_max": wick_max,
            "wrong_lambda_residual": neg_lambda,
            "wrong_exponent_residual": neg_exponent,
        },
    )


def _check_symmetry(cfg, shared):
    tol = cfg.tol
    table = shared.table
    rho, theta = np.meshgrid((0.2, 0.5, 0.8), np.linspace(0.0, 2.0 * np.pi, 17))
    plus = DiskPoint.from_polar(rho, theta)
    minus = DiskPoint.from_polar(rho, -theta)
    even_dev = 0.0
    odd_dev = 0.0
    for n, m in ((0, 1), (1, 1), (2, 1), (3, 2), (5, 3)):
        a = eval_Fnm(BasisIndex(n, m), plus, table)
        b = eval_Fnm(BasisIndex(n, m), minus, table)
        even_dev = max(even_dev, float(np.max(np.abs(b[..., :2] - a[..., :2]))))
        odd_dev = max(odd_dev, float(np.max(np.abs(b[..., 2:] + a[..., 2:]))))
    state = WaveState(
        {
            BasisIndex(*_EMERGENCE_LOW): np.array([1.0, 0.0, 0.0, 0.0]),
            BasisIndex(*_EMERGENCE_HIGH): np.array([_EMERGENCE_SEED, 0.0, 0.0, 0.0]),
        }
    )
    t_star, fractions = mode_emergence(
        state, _EMERGENCE_HIGH, _EMERGENCE_TIMES, shared.points, table
    )
    shared.emergence = (_EMERGENCE_TIMES, fractions, t_star)
    passed = (
        even_dev < tol["symmetry"]
        and odd_dev < tol["symmetry"]
        and t_star is not None
        and t_star > 0.0
    )
    return CheckResult(
        "symmetry",
        passed,
        {
            "even_component_deviation": even_dev,
            "odd_component_deviation": odd_dev,
            "emergence_time": t_star,
            "final_fraction": fractions[-1],
        },
    )


_CHECKS = {
    "bessel": _check_bessel,
    "kernel": _check_kernel,
    "orthogonality": _check_orthogonality,
    "norms": _check_norms,
    "cross_products": _check_cross_products,
    "completeness": _check_completeness,
    "gram_schmidt": _check_gram_schmidt,
    "evolution": _check_evolution,
    "symmetry": _check_symmetry,
}


def _render_figures(shared, directory):
    from . import figures

    os.makedirs(directory, exist_ok=True)
    written = []
    if shared._gram is not None:
        written.append(
            figures.save_gram_heatmap(
                os.path.join(directory, "gram.png"), shared.gram_report
            )
        )
    if shared.profiles:
        written.append(
            figures.save_convergence(
                os.path.join(directory, "convergence.png"), shared.profiles
            )
        )
    if shared.emergence is not None:
        times, fractions, t_star = shared.emergence
        written.append(
            figures.save_emergence(
                os.path.join(directory, "emergence.png"), times, fractions, t_star
            )
        )
    return written


def run_verify(config=None, only=None, figures_dir=None):
    """Run the selected check families and collect a report.

    ``only`` narrows the run to a subset of CHECK_NAMES.  A module
    error inside one family marks that family failed and is recorded in
    its notes rather than aborting the rest.
    """
    cfg = (config or RunConfig()).validate()
    names = list(CHECK_NAMES) if only is None else list(only)
    unknown = [n for n in names if n not in _CHECKS]
    if unknown:
        raise ConfigurationError(
            "unknown check families %s; valid: %s"
            % (", ".join(unknown), ", ".join(CHECK_NAMES))
        )
    shared = _Shared(cfg)
    results = []
    for name in names:
        try:
            results.append(_CHECKS[name](cfg, shared))
        except MetamonoError as exc:
            results.append(
                CheckResult(name, False, {}, notes=["%s: %s" % (type(exc).__name__, exc)])
            )
    if figures_dir is not None:
        _render_figures(shared, figures_dir)
    return VerificationReport(results=results, config=cfg)
