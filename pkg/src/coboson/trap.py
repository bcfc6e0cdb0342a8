"""Grand-canonical cobosons in a 3D isotropic harmonic trap.

Shell p of the trap holds g(p) = (p+1)(p+2)/2 degenerate states at
dimensionless energy e_p = alpha + p * s above the chemical potential,
where s = T0/(T N^(1/3)) is the level spacing in units of k_B T, T0 is
the finite-N accumulation temperature, and alpha > 0 absorbs the
zero-point shift and -beta*mu.  The occupation of one state at energy e is

    occ(e) = (1 - e^-e) sum_{n>=0} e^(-e n) [1 + (n-1) ratio(n)].

The geometric part of the series is summed in closed form and the
correction sum_{n>=2} (n-1) ratio(n) e^(-e n) is truncated when the
running term falls below 1e-16 of the partial sum, so the same code path
stays usable from the Bose-Einstein reduction at x = 1 down to the
strongly Pauli-suppressed fermion-pair regime.

Two condensate-fraction estimators are exposed: the accumulation-point
approximation (ground series at alpha = 1/N minus a (T/T0)^3 depletion
sum, the path used for the reference figures) and the full solve, which
finds alpha from <N_total> = N by bracketing bisection with secant
refinement and reports the solved ground occupation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import Kind, SchmidtSpec, normalization_ratio_array

__all__ = [
    "ConvergenceError",
    "BracketingError",
    "CutoffWarning",
    "TrapEnsemble",
    "degeneracy",
    "level_occupation",
    "total_number",
    "solve_alpha",
    "accumulation_occupation",
    "depletion_sum",
    "fraction_accumulation_approx",
    "condensate_fraction_full",
    "transition_temperature",
]

DEFAULT_SERIES_CUTOFF = 5_000_000
DEFAULT_REL_TOL = 1e-16
_BLOCK = 65536
_FERMION_X0_SHELLS = 200


class ConvergenceError(RuntimeError):
    """A truncated series hit its hard cap before meeting its tolerance."""


class BracketingError(RuntimeError):
    """No sign change available for the chemical-offset root solve."""


class CutoffWarning(UserWarning):
    """The returned value depends on an explicit cutoff, not on convergence."""


def degeneracy(p):
    """States per shell of the 3D isotropic trap: (p+1)(p+2)/2."""
    return (p + 1) * (p + 2) // 2


@dataclass(frozen=True)
class TrapEnsemble:
    """Mean number n_mean of one coboson species at reduced temperature t_rel.

    alpha is the dimensionless offset of the ground level above the
    chemical potential; level_cutoff/series_cutoff are explicit truncation
    knobs (None lets total_number pick the shell cutoff from its tail rule).
    """

    n_mean: int
    spec: SchmidtSpec
    t_rel: float
    alpha: float
    level_cutoff: int | None = None
    series_cutoff: int = DEFAULT_SERIES_CUTOFF

    def __post_init__(self):
        if self.n_mean < 1 or int(self.n_mean) != self.n_mean:
            raise ValueError(f"n_mean must be a positive integer, got {self.n_mean}")
        if not self.t_rel > 0:
            raise ValueError(f"t_rel must be positive, got {self.t_rel}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive (mu below E0), got {self.alpha}")

    @property
    def level_spacing(self):
        """Shell spacing in units of k_B T: T0/(T N^(1/3))."""
        return 1.0 / (self.t_rel * self.n_mean ** (1.0 / 3.0))

    @classmethod
    def solved(cls, n_mean, spec, t_rel, **kwargs):
        """Ensemble with alpha solved so the mean total number equals n_mean."""
        return cls(n_mean, spec, t_rel, solve_alpha(n_mean, spec, t_rel), **kwargs)


def _correction_coefficients(spec, n):
    """(n-1) * ratio(n) for an array of n >= 2."""
    return (n - 1.0) * normalization_ratio_array(spec, n)


def level_occupation(spec, e, series_cutoff=DEFAULT_SERIES_CUTOFF, rel_tol=DEFAULT_REL_TOL):
    """Mean occupation of a single trap state at dimensionless energy e > 0.

    Separable fermion pairs are the printed identity occ = 1 exactly: a
    lone pair blocks its internal mode, so every level holds one pair
    independent of e.  For every other spec the series above is summed
    with its running-term criterion; a ConvergenceError signals that the
    cap was hit first (reachable for boson pairs near x = 0 with tiny e,
    where terms scale as n^2 e^(-e n)).
    """
    if not e > 0:
        raise ValueError(f"need e > 0, got {e}")
    if spec.kind is Kind.BI_FERMION and spec.x == 0.0:
        return 1.0
    q_log = -e
    one_minus_q = -math.expm1(-e)
    blocks = []
    start = 2
    while start <= series_cutoff:
        n = np.arange(start, min(start + _BLOCK, series_cutoff + 1), dtype=float)
        terms = _correction_coefficients(spec, n) * np.exp(q_log * n)
        blocks.append(float(terms.sum()))
        partial = 1.0 - one_minus_q + one_minus_q * math.fsum(blocks)
        if terms[-1] <= rel_tol * max(1.0, abs(partial)):
            return partial
        start += _BLOCK
    raise ConvergenceError(
        f"occupation series hit the cap ({series_cutoff}) before converging at e = {e:g}")


def _occupations_batch(spec, energies, series_cutoff, rel_tol=DEFAULT_REL_TOL):
    """level_occupation over an array of energies sharing one coefficient table."""
    es = np.asarray(energies, dtype=float)
    one_minus_q = -np.expm1(-es)
    e_min = float(es.min())
    length = min(int(80.0 / e_min) + 64, series_cutoff)
    while True:
        n = np.arange(2, length + 1, dtype=float)
        coeff = _correction_coefficients(spec, n)
        corr = np.exp(-np.outer(es, n)) @ coeff
        occ = 1.0 - one_minus_q + one_minus_q * corr
        last = coeff[-1] * math.exp(-e_min * length)
        if last <= rel_tol * max(1.0, float(np.min(np.abs(occ)))):
            return occ
        if length >= series_cutoff:
            raise ConvergenceError(
                f"occupation series hit the cap ({series_cutoff}) before converging "
                f"at e = {e_min:g}")
        length = min(length * 2, series_cutoff)


def _shell_count(alpha, spacing, n_mean, level_cutoff):
    """Smallest shell index whose geometric tail estimate is below 1e-10 N."""
    if level_cutoff is not None:
        return level_cutoff
    log_thresh = math.log(1e-10 * n_mean * -math.expm1(-spacing))
    p = 1
    while p < 10_000_000:
        if math.log(degeneracy(p)) - (alpha + p * spacing) < log_thresh:
            return p
        p += 1
    raise ConvergenceError("shell cutoff search did not terminate")


def total_number(ens):
    """Mean total number: sum over shells of g(p) * occ(alpha + p * spacing).

    For separable fermion pairs every shell contributes exactly g(p), so
    the sum grows with the cutoff; that regime returns the truncated sum
    under a CutoffWarning instead of pretending to converge.
    """
    spec = ens.spec
    spacing = ens.level_spacing
    if spec.kind is Kind.BI_FERMION and spec.x == 0.0:
        p_max = ens.level_cutoff if ens.level_cutoff is not None else _FERMION_X0_SHELLS
        warnings.warn(
            "separable fermion pairs occupy every level once; the total grows "
            f"with the shell cutoff (using p <= {p_max})", CutoffWarning, stacklevel=2)
        return float(sum(degeneracy(p) for p in range(p_max + 1)))
    p_max = _shell_count(ens.alpha, spacing, ens.n_mean, ens.level_cutoff)
    ground = level_occupation(spec, ens.alpha, ens.series_cutoff)
    p = np.arange(1, p_max + 1, dtype=float)
    occ = _occupations_batch(spec, ens.alpha + p * spacing, ens.series_cutoff)
    g = 0.5 * p * p + 1.5 * p + 1.0
    return ground + math.fsum((g * occ).tolist())


def solve_alpha(n_mean, spec, t_rel, rel_residual=1e-8,
                series_cutoff=DEFAULT_SERIES_CUTOFF, level_cutoff=None):
    """Chemical offset alpha at which the mean total number equals n_mean.

    The total is decreasing in alpha, so a sign-changing bracket is grown
    geometrically (up from alpha = 1 while the total exceeds n_mean, down
    toward the 1e-12 floor while it falls short) and then closed by
    bisection in log(alpha) with a secant polish.  A BracketingError means
    no root exists above the floor: the gas cannot hold n_mean pairs at
    this temperature, which happens for fermion pairs once the Pauli
    saturation of the level occupations caps the trap's capacity.
    """
    if spec.kind is Kind.BI_FERMION and spec.x == 0.0:
        raise BracketingError(
            "separable fermion pairs have no solvable offset: the total number is "
            "cutoff-dependent (each level holds exactly one pair)")

    def residual(a):
        ens = TrapEnsemble(n_mean, spec, t_rel, a,
                           level_cutoff=level_cutoff, series_cutoff=series_cutoff)
        return total_number(ens) - n_mean

    hi = 1.0
    f_hi = residual(hi)
    while f_hi > 0.0:
        hi *= 4.0
        if hi > 1e8:
            raise BracketingError("no upper bracket below alpha = 1e8")
        f_hi = residual(hi)
    lo = None
    a = hi / 16.0
    while True:
        f_a = residual(a)
        if f_a > 0.0:
            lo, f_lo = a, f_a
            break
        hi, f_hi = a, f_a
        a /= 16.0
        if a < 1e-12:
            f_floor = residual(1e-12)
            if f_floor > 0.0:
                lo, f_lo = 1e-12, f_floor
                break
            raise BracketingError(
                f"total number saturates at {f_floor + n_mean:.6g} < n_mean = {n_mean} "
                f"for alpha down to 1e-12 (x = {spec.x}, t_rel = {t_rel})")

    for _ in range(120):
        if hi / lo < 1.0 + 1e-14:
            break
        mid = math.sqrt(lo * hi)
        f_mid = residual(mid)
        if f_mid > 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    alpha = math.sqrt(lo * hi)
    # secant polish on the final bracket
    a0, f0, a1, f1 = lo, f_lo, hi, f_hi
    for _ in range(3):
        if f1 == f0:
            break
        cand = a1 - f1 * (a1 - a0) / (f1 - f0)
        if not (lo <= cand <= hi):
            break
        f_cand = residual(cand)
        a0, f0, a1, f1 = a1, f1, cand, f_cand
        alpha = cand
        if abs(f_cand) <= rel_residual * n_mean:
            break

    ens = TrapEnsemble(n_mean, spec, t_rel, alpha,
                       level_cutoff=level_cutoff, series_cutoff=series_cutoff)
    if abs(total_number(ens) - n_mean) > rel_residual * n_mean:
        raise ConvergenceError(
            f"offset solve left a residual above {rel_residual:g} * N "
            f"(x = {spec.x}, t_rel = {t_rel})")
    return alpha


def _weighted_series(spec, n_mean, weight_fn, series_cutoff, rel_tol=DEFAULT_REL_TOL):
    """sum_{n>=1} weight(n) [1 + (n-1) ratio(n)] by blocks."""
    blocks = []
    start = 1
    while start <= series_cutoff:
        n = np.arange(start, min(start + _BLOCK, series_cutoff + 1), dtype=float)
        s = 1.0 + _correction_coefficients(spec, n)
        terms = weight_fn(n) * s
        blocks.append(float(terms.sum()))
        total = math.fsum(blocks)
        if abs(terms[-1]) <= rel_tol * max(1.0, abs(total)):
            return total
        start += _BLOCK
    raise ConvergenceError(f"series hit the cap ({series_cutoff}) before converging")


def accumulation_occupation(n_mean, spec, series_cutoff=DEFAULT_SERIES_CUTOFF):
    """Ground occupation with the offset pinned at the accumulation value 1/N.

    (1 - e^(-1/N)) sum_{n>=1} e^(-n/N) [1 + (n-1) ratio(n)]; approaches 1
    for separable fermion pairs and N at maximal entanglement.
    """
    q_log = -1.0 / n_mean
    total = _weighted_series(spec, n_mean, lambda n: np.exp(q_log * n), series_cutoff)
    return -math.expm1(q_log) * total


def depletion_sum(n_mean, spec, series_cutoff=DEFAULT_SERIES_CUTOFF):
    """Thermal depletion slope S of the accumulation-point estimator.

    S = sum_{n>=1} (1/n^3 - e^(-1/N)/(1+n)^3) e^(-n/N) [1 + (n-1) ratio(n)],
    which approaches zeta(3) for large N at maximal entanglement.
    """
    q = math.exp(-1.0 / n_mean)

    def weight(n):
        return (1.0 / n ** 3 - q / (1.0 + n) ** 3) * np.exp(-n / n_mean)

    return _weighted_series(spec, n_mean, weight, series_cutoff)


def fraction_accumulation_approx(n_mean, spec, t_rel, clamp=True,
                                 series_cutoff=DEFAULT_SERIES_CUTOFF):
    """Condensate fraction from the accumulation-point approximation.

    accumulation_occupation/N - t_rel^3 * depletion_sum; a low-temperature
    expansion whose raw value turns negative at large t_rel, clamped to 0
    unless clamp=False.
    """
    raw = (accumulation_occupation(n_mean, spec, series_cutoff) / n_mean
           - t_rel ** 3 * depletion_sum(n_mean, spec, series_cutoff))
    if clamp:
        return max(0.0, raw)
    return raw


def condensate_fraction_full(n_mean, spec, t_rel, **solve_kwargs):
    """Ground-shell fraction g(0) * occ(alpha*) / N at the solved offset."""
    alpha = solve_alpha(n_mean, spec, t_rel, **solve_kwargs)
    cutoff = solve_kwargs.get("series_cutoff", DEFAULT_SERIES_CUTOFF)
    return degeneracy(0) * level_occupation(spec, alpha, cutoff) / n_mean


def transition_temperature(n_mean, spec, threshold=None, estimator="paper-approx",
                           t_max=6.0, grid_points=96, refine_tol=1e-4):
    """Smallest reduced temperature at which the condensate fraction dies.

    Scans a t_rel grid on (0, t_max] for the first point where the chosen
    estimator drops below threshold (default 1.5/N, separating the
    single-occupancy floor 1/N from condensation), then bisects the
    bracketing interval.  Raises ConvergenceError if the fraction never
    crosses the threshold on the grid.
    """
    if threshold is None:
        threshold = 1.5 / n_mean
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    if estimator == "paper-approx":
        ground = accumulation_occupation(n_mean, spec)
        slope = depletion_sum(n_mean, spec)
        frac = lambda t: max(0.0, ground / n_mean - t ** 3 * slope)
    elif estimator == "full-solve":
        frac = lambda t: condensate_fraction_full(n_mean, spec, t)
    else:
        raise ValueError(f"unknown estimator {estimator!r}")
    ts = np.linspace(t_max / grid_points, t_max, grid_points)
    below = None
    for i, t in enumerate(ts):
        if frac(float(t)) < threshold:
            below = i
            break
    if below is None:
        raise ConvergenceError(
            f"fraction never drops below {threshold:g} on (0, {t_max}]")
    if below == 0:
        return float(ts[0])
    lo, hi = float(ts[below - 1]), float(ts[below])
    while hi - lo > refine_tol:
        mid = 0.5 * (lo + hi)
        if frac(mid) < threshold:
            hi = mid
        else:
            lo = mid
    return hi
