"""Integral imprecise probability metrics on finite outcome spaces.

Capacities and lower probabilities, Choquet integration, IIPM instances
(lower total variation, the 1D Lipschitz family, contaminated kernel
distances) and the maximum mean imprecision family of epistemic uncertainty
measures.  The :mod:`iipm.harness` subpackage turns ensemble predictions into
accuracy-rejection curves.
"""

from .capacity import (
    Capacity,
    ContaminationModel,
    CredalSet,
    FiniteSpace,
    MassFunction,
    additive_capacity,
    capacity_from_credal,
    conjugate,
    epsilon_contamination,
    is_two_monotone,
    mobius_forward,
    mobius_inverse,
    outer_approx_epsilon,
    vacuous_capacity,
    validate_capacity,
)
from .choquet import BoundedFunction, choquet_integral, choquet_threshold_oracle, lebesgue_expectation
from .metrics import (
    FunctionFamily,
    KernelSpec,
    SampleSet,
    contaminated_kantorovich_check,
    contaminated_mmd_sq,
    gaussian_kernel,
    iipm_bruteforce,
    indicator_family,
    lipschitz_family_1d,
    ltv,
    singleton_l1,
    wasserstein1_line,
)
from .uncertainty import (
    UncertaintyScores,
    entropy_difference,
    gh_measure,
    mmi_family,
    mmi_lin,
    mmi_tv,
    shannon_entropy,
    uncertainty_scores,
)

__version__ = "0.1.0"

__all__ = [
    "Capacity",
    "ContaminationModel",
    "CredalSet",
    "FiniteSpace",
    "MassFunction",
    "additive_capacity",
    "capacity_from_credal",
    "conjugate",
    "epsilon_contamination",
    "is_two_monotone",
    "mobius_forward",
    "mobius_inverse",
    "outer_approx_epsilon",
    "vacuous_capacity",
    "validate_capacity",
    "BoundedFunction",
    "choquet_integral",
    "choquet_threshold_oracle",
    "lebesgue_expectation",
    "FunctionFamily",
    "KernelSpec",
    "SampleSet",
    "contaminated_kantorovich_check",
    "contaminated_mmd_sq",
    "gaussian_kernel",
    "iipm_bruteforce",
    "indicator_family",
    "lipschitz_family_1d",
    "ltv",
    "singleton_l1",
    "wasserstein1_line",
    "UncertaintyScores",
    "entropy_difference",
    "gh_measure",
    "mmi_family",
    "mmi_lin",
    "mmi_tv",
    "shannon_entropy",
    "uncertainty_scores",
]
