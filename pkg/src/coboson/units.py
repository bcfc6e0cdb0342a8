"""Physical-units layer: hydrogen condensation temperatures and proton purity.

Everything else in the package works in trap units (k_B = 1, E1 - E0 = 1
or spacing-per-k_BT); this module pins SI constants once so that the
atomic-hydrogen worked example can be evaluated in kelvin:

    T_c = h^2/(2 pi m k_B) (n / zeta(3/2))^(2/3)      ideal-gas critical
    T_0 = T_c * zeta(3)^(1/3)                          accumulation point

and the proton's purity inside a trapped hydrogen atom,
P = 33/(4 sqrt(2 pi)) (a0/b)^3 with a0 the Bohr radius and b the trap
size.  The prefactor is kept as printed in the source analysis (33, not
3^3); both readings leave P far below the maximal-entanglement threshold
at experimental trap sizes, so the classification is insensitive.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .analytic import riemann_zeta
from .core import ValidityWarning

__all__ = [
    "PLANCK_H",
    "BOLTZMANN_K",
    "HYDROGEN_MASS",
    "BOHR_RADIUS",
    "GasSample",
    "HYDROGEN_BEC",
    "critical_temperature",
    "pseudo_critical_temperature",
    "proton_purity",
    "classify_purity",
]

# CODATA 2018 SI values (h and k_B are exact by definition)
PLANCK_H = 6.62607015e-34        # J s
BOLTZMANN_K = 1.380649e-23       # J / K
HYDROGEN_MASS = 1.6735328e-27    # kg, 1H atom
BOHR_RADIUS = 5.29177210903e-11  # m

MAX_ENTANGLEMENT_PURITY = 1e-6


@dataclass(frozen=True)
class GasSample:
    """Trapped gas: number density (m^-3), particle mass (kg), trap size (m)."""

    density: float
    particle_mass: float
    trap_size_b: float

    def __post_init__(self):
        for name in ("density", "particle_mass", "trap_size_b"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


# the observed hydrogen condensate: n = 1.8e20 m^-3, trap size ~ 9.6e-8 m
HYDROGEN_BEC = GasSample(density=1.8e20, particle_mass=HYDROGEN_MASS,
                         trap_size_b=9.6e-8)


def critical_temperature(sample):
    """Ideal-gas critical temperature in kelvin for the given sample."""
    prefactor = PLANCK_H ** 2 / (2.0 * math.pi * sample.particle_mass * BOLTZMANN_K)
    return prefactor * (sample.density / riemann_zeta(1.5)) ** (2.0 / 3.0)


def pseudo_critical_temperature(t_c):
    """Accumulation-point temperature T0 = T_c * zeta(3)^(1/3), in kelvin."""
    if t_c < 0:
        raise ValueError(f"temperature must be >= 0, got {t_c}")
    return t_c * riemann_zeta(3.0) ** (1.0 / 3.0)


def proton_purity(sample):
    """Proton purity estimate 33/(4 sqrt(2 pi)) (a0/b)^3 for a trapped H atom.

    The formula assumes b >> a0; when it returns a value above 1 it is
    outside its validity range and a ValidityWarning is attached.
    """
    p = 33.0 / (4.0 * math.sqrt(2.0 * math.pi)) * (BOHR_RADIUS / sample.trap_size_b) ** 3
    if p > 1.0:
        warnings.warn(
            f"purity estimate {p:g} exceeds 1; trap size is too close to the Bohr "
            "radius for the estimate to hold", ValidityWarning, stacklevel=2)
    return p


def classify_purity(p):
    """'maximally entangled' below 1e-6, otherwise 'partially entangled'."""
    if p < 0:
        raise ValueError(f"purity must be >= 0, got {p}")
    if p < MAX_ENTANGLEMENT_PURITY:
        return "maximally entangled"
    return "partially entangled"
