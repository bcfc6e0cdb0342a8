"""Condensation statistics for composite bosons built from entangled pairs.

The package computes occupation numbers, condensate fractions, and
transition temperatures for gases of composite bosons (entangled
fermion pairs or boson pairs) in a two-level system and in a 3D
isotropic harmonic trap, together with the special functions and
closed-form limits needed to cross-check them.
"""

from .core import (
    Kind,
    SchmidtSpec,
    TruncatedWeights,
    ValidityWarning,
    fermion_ratio_bounds,
    ladder_residual,
    normalization_ratio,
    normalization_ratio_oracle,
    occupancy_factor,
    purity,
    schmidt_number,
    schmidt_weight,
    truncated_weights,
)
from .two_level import (
    TwoLevelEnsemble,
    condensate_fraction,
    fraction_max_entangled,
    fraction_near_max,
    fraction_separable_bosons,
    ground_occupation,
    partition_function,
)
from .trap import (
    BracketingError,
    ConvergenceError,
    CutoffWarning,
    TrapEnsemble,
    accumulation_occupation,
    condensate_fraction_full,
    degeneracy,
    depletion_sum,
    fraction_accumulation_approx,
    level_occupation,
    solve_alpha,
    total_number,
    transition_temperature,
)
from .analytic import (
    DeltaExpansion,
    bose_f1_derivative,
    bose_integral,
    fraction_thermo_limit,
    occupation_delta_expansion,
    riemann_zeta,
    total_number_decomposition,
)
from .units import (
    GasSample,
    HYDROGEN_BEC,
    classify_purity,
    critical_temperature,
    proton_purity,
    pseudo_critical_temperature,
)

__version__ = "0.1.0"
