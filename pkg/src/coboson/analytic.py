"""Special functions and near-maximal-entanglement analytics.

Provides the Riemann zeta values and Bose integrals

    F_l(gamma) = sum_{p>=1} exp(-gamma p) / p^l,   F_l(0) = zeta(l),

the two-term expansion of the level occupation in delta = 1 - x, and the
thermodynamic-limit condensate fraction

    1 - (T/T0)^3 [zeta(3) + 2 delta (zeta(3) + zeta(2))].

zeta is evaluated by direct summation with an Euler-Maclaurin tail so the
three needed values (l = 3/2, 2, 3) share one audited code path instead of
hard-coded constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "riemann_zeta",
    "bose_integral",
    "bose_f1_derivative",
    "DeltaExpansion",
    "occupation_delta_expansion",
    "fraction_thermo_limit",
    "TotalNumberParts",
    "total_number_decomposition",
]

_BOSE_REL_TOL = 1e-15
_BOSE_MAX_TERMS = 50_000_000


def riemann_zeta(l, terms=4000):
    """zeta(l) = sum 1/p^l by direct summation plus an integral-tail correction.

    The tail from p = terms+1 on is replaced by its Euler-Maclaurin
    expansion through the B4 term, good to ~1e-13 already at a few
    hundred terms for l >= 3/2.
    """
    if l <= 1.0:
        raise ValueError(f"zeta series diverges for l <= 1, got l = {l}")
    if terms < 10:
        raise ValueError("need at least 10 direct terms")
    p = np.arange(1, terms + 1, dtype=float)
    direct = math.fsum((p ** -l).tolist())
    a = terms + 1.0
    tail = (a ** (1.0 - l) / (l - 1.0)
            + 0.5 * a ** -l
            + l / 12.0 * a ** (-l - 1.0)
            - l * (l + 1.0) * (l + 2.0) / 720.0 * a ** (-l - 3.0))
    return direct + tail


def bose_integral(l, gamma):
    """Bose integral F_l(gamma) = sum_{p>=1} e^(-gamma p) / p^l.

    gamma = 0 reduces to zeta(l) and needs l >= 2; (l = 1, gamma = 0) is
    the divergent case and is rejected.
    """
    if l < 1 or int(l) != l:
        raise ValueError(f"l must be a positive integer, got {l}")
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if gamma == 0.0:
        if l < 2:
            raise ValueError("F_1(0) diverges; need gamma > 0 for l = 1")
        return riemann_zeta(float(l))
    total = 0.0
    block = 65536
    start = 1
    # terms decrease monotonically, so once the geometric tail bound
    # e^-gamma/(1 - e^-gamma) * term drops below the tolerance we stop
    tail_factor = math.exp(-gamma) / -math.expm1(-gamma)
    while start <= _BOSE_MAX_TERMS:
        p = np.arange(start, min(start + block, _BOSE_MAX_TERMS + 1), dtype=float)
        t = np.exp(-gamma * p) / p ** l
        total += float(t.sum())
        if t[-1] * tail_factor < _BOSE_REL_TOL * total:
            return total
        start += block
    raise RuntimeError(f"Bose integral did not converge for l={l}, gamma={gamma}")


def bose_f1_derivative(gamma):
    """dF_1/dgamma = -sum e^(-gamma p) = -1/(e^gamma - 1), in closed form."""
    if gamma <= 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    return -1.0 / math.expm1(gamma)


@dataclass(frozen=True)
class DeltaExpansion:
    """Small parameter delta = 1 - x with an advisory validity flag."""

    delta: float

    def __post_init__(self):
        if not (0.0 <= self.delta < 1.0):
            raise ValueError(f"delta must lie in [0, 1), got {self.delta}")

    @property
    def valid(self):
        return self.delta < 0.05


def occupation_delta_expansion(delta, e):
    """Level occupation expanded to first order in delta = 1 - x.

    (1 + 2 delta)/(e^e - 1) - 2 delta e^e/(e^e - 1)^2, with e the
    dimensionless beta*(E - mu) > 0.  delta = 0 is the Bose-Einstein
    distribution.
    """
    if e <= 0:
        raise ValueError(f"need e > 0, got {e}")
    em = math.expm1(e)
    return (1.0 + 2.0 * delta) / em - 2.0 * delta * math.exp(e) / (em * em)


def fraction_thermo_limit(delta, t_rel, clamp=True):
    """Thermodynamic-limit condensate fraction near maximal entanglement.

    1 - t^3 [zeta(3) + 2 delta (zeta(3) + zeta(2))]; the raw value goes
    negative above the accumulation point and is clamped to 0 unless
    clamp=False.
    """
    if delta < 0 or t_rel < 0:
        raise ValueError("delta and t_rel must be >= 0")
    z3 = riemann_zeta(3.0)
    z2 = riemann_zeta(2.0)
    raw = 1.0 - t_rel ** 3 * (z3 + 2.0 * delta * (z3 + z2))
    if clamp:
        return max(0.0, raw)
    return raw


@dataclass(frozen=True)
class TotalNumberParts:
    """Two-part decomposition of the trapped total number near x = 1.

    part_one collects the Bose-distribution shell sum expanded in Bose
    integrals; part_two the squared-distribution correction, in both its
    Bose-integral form (part_two) and by direct shell summation
    (part_two_direct).  Their difference measures the sum-to-integral
    replacement.  total combines them with the delta weights
    (1 + 2 delta) part_one - 2 delta part_two.
    """

    delta: float
    gamma: float
    part_one_ground: float
    part_one: float
    part_two_ground: float
    part_two: float
    part_two_direct: float

    @property
    def total(self):
        return (1.0 + 2.0 * self.delta) * self.part_one - 2.0 * self.delta * self.part_two

    @property
    def total_direct(self):
        return (1.0 + 2.0 * self.delta) * self.part_one - 2.0 * self.delta * self.part_two_direct

    @property
    def integral_replacement_residual(self):
        return self.part_two - self.part_two_direct


def _part_two_direct(spacing, gamma, rel_tol=1e-14, max_shells=2_000_000):
    """sum_{q>=0} (q^2/2 + 5q/2 + 3) e^(g+q s) / (e^(g+q s) - 1)^2 by blocks."""
    total = 0.0
    block = 8192
    start = 0
    while start <= max_shells:
        q = np.arange(start, min(start + block, max_shells + 1), dtype=float)
        e = gamma + q * spacing
        em = np.expm1(e)
        t = (0.5 * q * q + 2.5 * q + 3.0) * np.exp(e) / (em * em)
        total += float(t.sum())
        if t[-1] < rel_tol * total:
            return total
        start += block
    raise RuntimeError("shell sum for the squared-distribution part did not converge")


def total_number_decomposition(delta, t_rel, n_mean, alpha):
    """Bose-integral decomposition of the total number at gamma = alpha + spacing.

    part_one = 1/(e^alpha - 1) + t^3 N F3 + (5/2) t^2 N^(2/3) F2 + 3 t N^(1/3) F1,
    part_two = e^alpha/(e^alpha-1)^2 - t^3 N F2 - (5/2) t^2 N^(2/3) F1
               - 3 t N^(1/3) dF1/dgamma,
    all at gamma = alpha + 1/(t N^(1/3)).  part_two is also evaluated by
    direct shell summation so the integral replacement can be audited.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if t_rel <= 0 or n_mean <= 0:
        raise ValueError("t_rel and n_mean must be > 0")
    spacing = 1.0 / (t_rel * n_mean ** (1.0 / 3.0))
    gamma = alpha + spacing
    f3 = bose_integral(3, gamma)
    f2 = bose_integral(2, gamma)
    f1 = bose_integral(1, gamma)
    df1 = bose_f1_derivative(gamma)
    ema = math.expm1(alpha)
    ground_one = 1.0 / ema
    ground_two = math.exp(alpha) / (ema * ema)
    n13 = n_mean ** (1.0 / 3.0)
    part_one = (ground_one
                + t_rel ** 3 * n_mean * f3
                + 2.5 * t_rel ** 2 * n13 ** 2 * f2
                + 3.0 * t_rel * n13 * f1)
    part_two = (ground_two
                - t_rel ** 3 * n_mean * f2
                - 2.5 * t_rel ** 2 * n13 ** 2 * f1
                - 3.0 * t_rel * n13 * df1)
    part_two_direct = ground_two + _part_two_direct(spacing, gamma)
    return TotalNumberParts(
        delta=delta,
        gamma=gamma,
        part_one_ground=ground_one,
        part_one=part_one,
        part_two_ground=ground_two,
        part_two=part_two,
        part_two_direct=part_two_direct,
    )
