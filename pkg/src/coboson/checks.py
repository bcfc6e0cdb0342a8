"""Verification suites behind the `check` CLI subcommand.

Each suite re-derives one family of published limits or cross-checks at
its stated tolerance and reports the worst observed deviation, so a
single run audits the whole numerical stack.  Suite 6 accepts a zeta(3)
perturbation hook used as a sensitivity canary: offsetting the constant
by 1e-3 must flip that suite to failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic, two_level, trap, units
from .core import (Kind, SchmidtSpec, fermion_ratio_bounds, normalization_ratio,
                   normalization_ratio_oracle, truncated_weights)
from .figures import build_figure

__all__ = ["CheckResult", "run_check"]

_KINDS = (Kind.BI_FERMION, Kind.BI_BOSON)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    tolerance: float
    observed: float
    passed: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        msg = f"[{status}] {self.suite:<4} {self.name:<42} observed={self.observed:.3e} tol={self.tolerance:.3e}"
        if self.detail and not self.passed:
            msg += f"  ({self.detail})"
        return msg


def _result(suite, name, tolerance, observed, detail=""):
    return CheckResult(suite, name, tolerance, observed,
                       passed=bool(observed <= tolerance), detail=detail)


def _suite1():
    worst = 0.0
    for kind in _KINDS:
        for x in (0.1, 0.3, 0.5, 0.7, 0.9):
            spec = SchmidtSpec(x, kind)
            weights = truncated_weights(spec)
            for n in range(9):
                closed = normalization_ratio(spec, n)
                oracle = normalization_ratio_oracle(kind, weights, n)
                worst = max(worst, abs(closed - oracle))
    return [_result("1", "ratio-closed-form-vs-oracle", 1e-9, worst)]


def _suite2():
    violation = 0.0
    eq_dev = 0.0
    for x in np.linspace(0.0, 0.99, 34):
        spec = SchmidtSpec(float(x), Kind.BI_FERMION)
        lower, upper = None, None
        for n in range(1, 9):
            lower, upper = fermion_ratio_bounds(spec, n)
            r = normalization_ratio(spec, n)
            violation = max(violation, lower - r, r - upper)
        _, upper1 = fermion_ratio_bounds(spec, 1)
        eq_dev = max(eq_dev, abs(normalization_ratio(spec, 1) - upper1))
    return [
        _result("2a", "fermion-ratio-purity-bounds", 1e-12, max(0.0, violation)),
        _result("2b", "upper-bound-equality-at-n1", 1e-12, eq_dev),
    ]


def _suite3():
    n = 100
    dev_x0 = max(
        abs(two_level.condensate_fraction(
            two_level.TwoLevelEnsemble(n, SchmidtSpec(0.0, Kind.BI_FERMION), beta)) - 1.0 / n)
        for beta in (0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0))
    boson0 = SchmidtSpec(0.0, Kind.BI_BOSON)
    dev_boson = abs(two_level.condensate_fraction(
        two_level.TwoLevelEnsemble(n, boson0, 50.0)) - n)
    dev_x1 = max(
        abs(two_level.condensate_fraction(
            two_level.TwoLevelEnsemble(n, SchmidtSpec(1.0, kind), 50.0)) - 1.0)
        for kind in _KINDS)
    dev_closed = 0.0
    for nn in (1, 2, 5, 100):
        for beta in (0.1, 0.5, 2.0, 10.0, 50.0):
            f1 = two_level.condensate_fraction(
                two_level.TwoLevelEnsemble(nn, SchmidtSpec(1.0, Kind.BI_FERMION), beta))
            d1 = abs(f1 - two_level.fraction_max_entangled(nn, beta))
            f0 = two_level.condensate_fraction(two_level.TwoLevelEnsemble(nn, boson0, beta))
            d0 = abs(f0 - two_level.fraction_separable_bosons(nn, beta))
            dev_closed = max(dev_closed, d1, d0)
    return [
        _result("3a", "two-level-fermion-x0-fraction-1overN", 1e-10, dev_x0),
        _result("3b", "two-level-boson-x0-fraction-to-N", 1e-6, dev_boson),
        _result("3c", "two-level-x1-fraction-to-1", 1e-6, dev_x1),
        _result("3d", "two-level-closed-form-agreement", 1e-10, dev_closed),
    ]


def _suite4():
    n, beta, k = 100, 50.0, 1e4
    x = (k - 1.0) / (k + 1.0)
    rows = []
    for suite, kind, target in (
            ("4a", Kind.BI_FERMION, 1.0 - (n - 1) / k),
            ("4b", Kind.BI_BOSON, 1.0 + (n + 1) / k)):
        exact = two_level.condensate_fraction(
            two_level.TwoLevelEnsemble(n, SchmidtSpec(x, kind), beta))
        rows.append(_result(suite, f"near-max-{kind.value}-limit", 5.0 / k,
                            abs(exact - target)))
    return rows


def _suite5():
    dev_f = max(
        abs(trap.level_occupation(SchmidtSpec(0.0, Kind.BI_FERMION), e) - 1.0)
        for e in np.geomspace(1e-3, 10.0, 12))
    dev_b = 0.0
    for z in (0.1, 0.5, 0.9):
        occ = trap.level_occupation(SchmidtSpec(0.0, Kind.BI_BOSON), -math.log(z))
        dev_b = max(dev_b, abs(occ - z * (1.0 + z) / (1.0 - z) ** 2))
    dev_be = max(
        abs(trap.level_occupation(SchmidtSpec(1.0, kind), e) - 1.0 / math.expm1(e))
        for kind in _KINDS for e in np.geomspace(0.2, 5.0, 10))
    return [
        _result("5a", "trap-fermion-x0-unit-occupation", 1e-10, dev_f),
        _result("5b", "trap-boson-x0-fugacity-form", 1e-10, dev_b),
        _result("5c", "trap-x1-bose-einstein-reduction", 1e-12, dev_be),
    ]


def _suite6(zeta3_offset):
    zeta3 = analytic.riemann_zeta(3.0) + zeta3_offset
    s = trap.depletion_sum(1_000_000, SchmidtSpec(1.0 - 1e-6, Kind.BI_FERMION))
    observed = max(abs(s - zeta3), abs(zeta3 - 1.202))
    detail = "" if zeta3_offset == 0.0 else f"zeta(3) perturbed by {zeta3_offset:g}"
    return [_result("6", "depletion-sum-matches-zeta3", 1e-3, observed, detail)]


def _monotone_violation(curveset, direction, t_cap=None):
    by_t = {}
    for row in curveset.rows:
        if t_cap is not None and row.abscissa > t_cap:
            continue
        by_t.setdefault(row.abscissa, []).append((row.x, row.value))
    worst = 0.0
    for pts in by_t.values():
        pts.sort()
        for (_, lo), (_, hi) in zip(pts, pts[1:]):
            step = hi - lo
            worst = max(worst, -step if direction == "nondecreasing" else step)
    return max(0.0, worst)


def _suite7():
    rows = []
    fig4 = build_figure("fig4")
    rows.append(_result("7a", "fig4-fraction-nondecreasing-in-x", 1e-12,
                        _monotone_violation(fig4, "nondecreasing", t_cap=0.9)))
    fig7 = build_figure("fig7")
    rows.append(_result("7b", "fig7-fraction-nonincreasing-in-x", 1e-12,
                        _monotone_violation(fig7, "nonincreasing")))
    fig2c = build_figure("fig2c")
    rows.append(_result("7c", "fig2c-bounded-by-1overN", 1e-12,
                        max(0.0, max(r.value for r in fig2c.rows) - 0.01)))
    fig6b = build_figure("fig6b")
    endpoint = min(fig6b.rows, key=lambda r: r.abscissa).value
    rows.append(_result("7d", "fig6b-cold-endpoint-near-2N", 0.05,
                        abs(endpoint - 200.0) / 200.0))
    worst_mono = 0.0
    worst_ends = 0.0
    for name in ("fig3a", "fig3b"):
        cs = build_figure(name)
        vals = [r.value for r in sorted(cs.rows, key=lambda r: r.abscissa)]
        worst_mono = max(worst_mono, max(
            (vals[i] - vals[i + 1] for i in range(len(vals) - 1)), default=0.0))
        worst_ends = max(worst_ends, abs(vals[0] - 0.01), max(0.0, 0.95 - vals[-1]))
    rows.append(_result("7e", "fig3-monotone-in-x", 1e-12, max(0.0, worst_mono)))
    rows.append(_result("7f", "fig3-endpoints-1overN-to-1", 1e-3, worst_ends))
    stable = build_figure("fig4").to_csv() == build_figure("fig4", jobs=4).to_csv()
    rows.append(_result("7g", "figure-csv-byte-stability", 0.0,
                        0.0 if stable else 1.0))
    return rows


def _suite8():
    rows = []
    n = 1000
    for delta in (0.001, 0.01):
        spec = SchmidtSpec(1.0 - delta, Kind.BI_FERMION)
        for t in (0.2, 0.5, 0.8):
            thermo = analytic.fraction_thermo_limit(delta, t)
            name = f"thermo-limit-vs-full-solve[d={delta},t={t}]"
            try:
                full = trap.condensate_fraction_full(n, spec, t)
            except (trap.BracketingError, trap.ConvergenceError) as exc:
                rows.append(CheckResult("8", name, 0.03, math.inf, False,
                                        detail=f"full solve failed: {exc}"))
                continue
            rows.append(_result("8", name, 0.03, abs(thermo - full)))
    return rows


def _suite9():
    tc = units.critical_temperature(units.HYDROGEN_BEC)
    t0_theory = units.pseudo_critical_temperature(tc)
    t0_exp = units.pseudo_critical_temperature(50e-6)
    return [
        _result("9a", "hydrogen-critical-temperature-51uK", 1e-6, abs(tc - 51e-6)),
        _result("9b", "hydrogen-pseudo-critical-54.06uK", 0.1e-6,
                abs(t0_theory - 54.06e-6)),
        _result("9c", "hydrogen-pseudo-critical-53.16uK", 0.1e-6,
                abs(t0_exp - 53.16e-6)),
    ]


def run_check(zeta3_offset=0.0):
    """Run every verification suite; returns the full list of CheckResults."""
    results = []
    results.extend(_suite1())
    results.extend(_suite2())
    results.extend(_suite3())
    results.extend(_suite4())
    results.extend(_suite5())
    results.extend(_suite6(zeta3_offset))
    results.extend(_suite7())
    results.extend(_suite8())
    results.extend(_suite9())
    return results
