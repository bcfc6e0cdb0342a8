"""Canonical ensemble of N cobosons on two energy levels.

The levels are E0 = 0 and E1 = 1 with mu = 0 and k_B = 1, so beta = 1/T
exactly.  With n pairs on the ground level the Boltzmann weight is
exp(-beta (N - n)) and the ground occupation is

    <n0> = (1/Z) sum_{n=0}^{N} e^(-beta (N-n)) [1 + (n-1) ratio(n)],
    Z    = (1 - e^(-beta (N+1))) / (1 - e^(-beta)).

The n = 0 summand is 1 - ratio(0) = 0 and is kept literally.  Closed
forms for the separable-boson and maximal-entanglement limits and for the
near-maximal expansion are provided for cross-validation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import Kind, SchmidtSpec, ValidityWarning, occupancy_factors

__all__ = [
    "TwoLevelEnsemble",
    "partition_function",
    "ground_occupation",
    "condensate_fraction",
    "fraction_max_entangled",
    "fraction_separable_bosons",
    "fraction_near_max",
]


@dataclass(frozen=True)
class TwoLevelEnsemble:
    """Exactly n_total cobosons of one species at inverse temperature beta."""

    n_total: int
    spec: SchmidtSpec
    beta: float

    def __post_init__(self):
        if self.n_total < 1 or int(self.n_total) != self.n_total:
            raise ValueError(f"n_total must be a positive integer, got {self.n_total}")
        if not (self.beta > 0.0) or math.isinf(self.beta):
            raise ValueError(f"beta must be finite and positive, got {self.beta}")


def partition_function(n_total, beta):
    """Z = (1 - e^(-beta(N+1))) / (1 - e^(-beta))."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return math.expm1(-beta * (n_total + 1)) / math.expm1(-beta)


def ground_occupation(ens):
    """Mean number of pairs on the ground level.

    Terms are accumulated from n = N down to 0 (largest weight first at
    low temperature) through exact compensated summation.
    """
    n = np.arange(ens.n_total, -1, -1, dtype=float)
    s = occupancy_factors(ens.spec, n)
    w = np.exp(-ens.beta * (ens.n_total - n))
    return math.fsum((w * s).tolist()) / partition_function(ens.n_total, ens.beta)


def condensate_fraction(ens):
    """Ground occupation divided by the total number of cobosons."""
    return ground_occupation(ens) / ens.n_total


def fraction_max_entangled(n_total, beta):
    """Closed-form condensate fraction at x = 1 (ideal-boson ratios).

    [1/(1-e^(-beta(N+1)))] [1 - e^(-beta)(1-e^(-beta N))/(N(1-e^(-beta)))],
    which tends to 1 as beta -> infinity.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    em1 = -math.expm1(-beta)
    return (1.0 / -math.expm1(-beta * (n_total + 1))) * (
        1.0 - math.exp(-beta) * -math.expm1(-beta * n_total) / (n_total * em1))


def fraction_separable_bosons(n_total, beta):
    """Closed-form condensate fraction for separable boson pairs (x = 0).

    Each dissociated constituent condenses independently, so the fraction
    tends to N as beta -> infinity instead of 1.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    eb = math.exp(-beta)
    em1 = -math.expm1(-beta)
    return (1.0 / -math.expm1(-beta * (1 + n_total))) * (
        n_total
        - 2.0 * eb / em1
        + eb * (1.0 + eb) * -math.expm1(-beta * n_total) / (n_total * em1 * em1))


def fraction_near_max(ens, schmidt_number, tzero=False):
    """Near-maximal-entanglement fraction from the ratio expansion 1 -+ n/K.

    Valid for K much larger than N (a ValidityWarning is attached below
    K = 10 N).  With tzero=True the analytic zero-temperature limit
    1 - (N-1)/K (fermion pairs) resp. 1 + (N+1)/K (boson pairs) is
    returned instead of the finite-beta expression.
    """
    n_total, beta, k = ens.n_total, ens.beta, schmidt_number
    if k <= 0:
        raise ValueError(f"Schmidt number must be positive, got {k}")
    if k < 10.0 * n_total:
        warnings.warn(
            f"near-max expansion needs K >> N; got K = {k:g} with N = {n_total}",
            ValidityWarning, stacklevel=2)
    fermion = ens.spec.kind is Kind.BI_FERMION
    if tzero:
        if fermion:
            return 1.0 - (n_total - 1) / k
        return 1.0 + (n_total + 1) / k
    eb = math.exp(-beta)
    em1 = -math.expm1(-beta)
    emn = -math.expm1(-beta * n_total)
    if fermion:
        bracket = (n_total - 1
                   - 2.0 * eb / em1
                   + 2.0 * eb * emn / (n_total * em1 * em1))
        sign = -1.0
    else:
        bracket = (n_total + 1
                   - 2.0 * eb / em1
                   + 2.0 * eb * eb * emn / (n_total * em1 * em1))
        sign = +1.0
    base = fraction_max_entangled(n_total, beta)
    return base + sign * bracket / (k * -math.expm1(-beta * (1 + n_total)))
