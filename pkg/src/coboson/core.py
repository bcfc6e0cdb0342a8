"""Internal-structure bookkeeping for composite bosons (cobosons).

A coboson is a bound pair of two fermions or two bosons whose internal
state has a geometric Schmidt spectrum

    lambda_m = (1 - x) x^m,   m = 0, 1, 2, ...

The single parameter x in [0, 1] controls the entanglement between the
two constituents: x = 0 is a separable pair, x -> 1 is maximal
entanglement.  Everything thermodynamic in this package is driven by the
normalization ratio of the n-pair state,

    fermion pair:  x^n (n+1)(1-x) / (1 - x^(n+1))
    boson pair:    (n+1)(1-x) / (1 - x^(n+1))

which measures how far the pair creation operator is from an ideal
bosonic ladder (ratio -> 1 for all n).  Closed forms are cross-checked
against brute-force symmetric-polynomial oracles built directly from the
truncated Schmidt weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Kind",
    "SchmidtSpec",
    "TruncatedWeights",
    "ValidityWarning",
    "schmidt_weight",
    "truncated_weights",
    "purity",
    "schmidt_number",
    "normalization_ratio",
    "normalization_ratio_array",
    "occupancy_factor",
    "occupancy_factors",
    "normalization_ratio_oracle",
    "ladder_residual",
    "fermion_ratio_bounds",
]

# Above this the quotient (1-x)/(1-x^(n+1)) is evaluated through
# log1p/expm1 instead of raw powers; the raw subtraction loses all
# digits once x is within ~1e-4 of 1.
_STABLE_X = 0.9


class ValidityWarning(UserWarning):
    """A result was produced outside a formula's documented validity range."""


class Kind(Enum):
    """Constituent statistics of the pair."""

    BI_FERMION = "bifermion"
    BI_BOSON = "biboson"


@dataclass(frozen=True)
class SchmidtSpec:
    """Entanglement parameter and constituent kind of one coboson species.

    x = 0 is a separable pair; x = 1 is accepted only by the operations
    that have a finite limit there (documented per operation).
    """

    x: float
    kind: Kind

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            raise TypeError(f"kind must be a Kind, got {self.kind!r}")
        if not (0.0 <= self.x <= 1.0) or math.isnan(self.x):
            raise ValueError(f"entanglement parameter x must lie in [0, 1], got {self.x}")

    @property
    def is_fermion_pair(self):
        return self.kind is Kind.BI_FERMION


@dataclass(frozen=True)
class TruncatedWeights:
    """First M Schmidt weights plus the exact mass of the dropped tail.

    weights[m] = (1-x) x^m for m < M and truncation_tail = x^M; the list
    is deliberately not renormalized so tests can assert the tail.
    """

    weights: tuple
    truncation_tail: float


def _reject_x1(spec, what):
    if spec.x == 1.0:
        raise ValueError(f"{what} is undefined at x = 1 (degenerate Schmidt spectrum)")


def schmidt_weight(spec, m):
    """Weight lambda_m = (1-x) x^m of internal mode m; the weights sum to 1."""
    if m < 0 or int(m) != m:
        raise ValueError(f"mode index must be a nonnegative integer, got {m}")
    _reject_x1(spec, "schmidt_weight")
    if spec.x == 0.0:
        return 1.0 if m == 0 else 0.0
    return (1.0 - spec.x) * spec.x ** m


def truncated_weights(spec, tail_tol=1e-14):
    """Weights truncated at the first M with x^M < tail_tol, tail carried along."""
    _reject_x1(spec, "truncated_weights")
    x = spec.x
    if x == 0.0:
        return TruncatedWeights(weights=(1.0,), truncation_tail=0.0)
    m_cut = max(1, math.ceil(math.log(tail_tol) / math.log(x)))
    w = tuple((1.0 - x) * x ** m for m in range(m_cut))
    return TruncatedWeights(weights=w, truncation_tail=x ** m_cut)


def purity(spec):
    """Purity P = sum lambda_m^2 = (1-x)/(1+x); 1 for separable, -> 0 as x -> 1."""
    _reject_x1(spec, "purity")
    return (1.0 - spec.x) / (1.0 + spec.x)


def schmidt_number(spec):
    """Effective number of occupied internal modes, K = 1/P = (1+x)/(1-x)."""
    _reject_x1(spec, "schmidt_number")
    return (1.0 + spec.x) / (1.0 - spec.x)


def normalization_ratio(spec, n):
    """Ratio of successive n-pair normalization constants.

    Fermion pairs: x^n (n+1)(1-x)/(1-x^(n+1)); boson pairs drop the x^n
    factor.  Equals 1 exactly at n = 0 (a single coboson is normalized)
    and 1 for every n at x = 1 (ideal-boson limit, returned analytically).
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    x = spec.x
    if n == 0 or x == 1.0:
        return 1.0
    if x == 0.0:
        return 0.0 if spec.is_fermion_pair else float(n + 1)
    if x > _STABLE_X:
        lnx = math.log1p(x - 1.0)  # x - 1 is exact for x in [0.5, 1]
        quotient = (1.0 - x) / (-math.expm1((n + 1) * lnx))
        power = math.exp(n * lnx)
    else:
        quotient = (1.0 - x) / (1.0 - x ** (n + 1))
        power = x ** n
    if spec.is_fermion_pair:
        return power * (n + 1) * quotient
    return (n + 1) * quotient


def normalization_ratio_array(spec, n):
    """Vectorized normalization_ratio over an integer array of n values."""
    n = np.asarray(n, dtype=float)
    x = spec.x
    if x == 1.0:
        return np.ones_like(n)
    if x == 0.0:
        if spec.is_fermion_pair:
            return np.where(n == 0, 1.0, 0.0)
        return n + 1.0
    # the expm1 formulation is uniformly accurate, so the array path uses
    # it for every x; it agrees with the scalar branch to machine precision
    lnx = math.log1p(x - 1.0)
    out = (n + 1.0) * (1.0 - x) / (-np.expm1((n + 1.0) * lnx))
    if spec.is_fermion_pair:
        out = out * np.exp(n * lnx)
    return np.where(n == 0, 1.0, out)


def occupancy_factor(spec, n):
    """Mode-number expectation 1 + (n-1) * ratio(n) in a normalized n-pair state."""
    return 1.0 + (n - 1) * normalization_ratio(spec, n)


def occupancy_factors(spec, n):
    """Vectorized occupancy_factor; the n = 0 entry is exactly 0."""
    n = np.asarray(n, dtype=float)
    return 1.0 + (n - 1.0) * normalization_ratio_array(spec, n)


def _power_sums(weights, k_max):
    lam = np.asarray(weights, dtype=float)
    return [float(np.sum(lam ** i)) for i in range(1, k_max + 1)]


def normalization_ratio_oracle(kind, weights, n):
    """Brute-force normalization ratio from truncated Schmidt weights.

    The n-pair normalization constant is n! e_n(lambda) for fermion pairs
    (elementary symmetric polynomial) and n! h_n(lambda) for boson pairs
    (complete homogeneous), so the ratio is (n+1) e_{n+1}/e_n resp.
    (n+1) h_{n+1}/h_n.  h is built by the Newton recurrence over power
    sums (every term positive, so it is cancellation-free); e is built by
    the one-weight-at-a-time inclusion recurrence, likewise positive,
    because the alternating-sign Newton form loses all digits once
    e_k spans many orders of magnitude.  Neither path enumerates subsets.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    if weights.truncation_tail >= 1e-12:
        raise ValueError(
            f"truncation tail {weights.truncation_tail:.3e} too large for the oracle (need < 1e-12)")
    k_max = n + 1
    if kind is Kind.BI_FERMION:
        poly = [1.0] + [0.0] * k_max
        for lam in weights.weights:
            for k in range(k_max, 0, -1):
                poly[k] += lam * poly[k - 1]
    else:
        p = _power_sums(weights.weights, k_max)
        poly = [1.0]
        for k in range(1, k_max + 1):
            acc = math.fsum(poly[k - i] * p[i - 1] for i in range(1, k + 1))
            poly.append(acc / k)
    if poly[n] == 0.0:
        raise ZeroDivisionError(
            f"normalization-ratio oracle: denominator underflowed to zero at n = {n}")
    return (n + 1) * poly[n + 1] / poly[n]


def ladder_residual(spec, n):
    """Squared norm of the non-bosonic remainder left by removing one pair.

    Annihilating one coboson from a normalized n-pair state leaves, besides
    sqrt(n * ratio(n-1)) times the (n-1)-pair state, an orthogonal remainder
    of squared norm 1 - n*ratio(n-1) + (n-1)*ratio(n).  It vanishes for
    ideal bosons (x = 1) and always at n = 1.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n}")
    return (1.0
            - n * normalization_ratio(spec, n - 1)
            + (n - 1) * normalization_ratio(spec, n))


def fermion_ratio_bounds(spec, n):
    """Purity bounds (1 - n*P, 1 - P) bracketing the fermion-pair ratio."""
    if not spec.is_fermion_pair:
        raise ValueError("ratio bounds are established for fermion pairs only")
    p = purity(spec)
    return (1.0 - n * p, 1.0 - p)
