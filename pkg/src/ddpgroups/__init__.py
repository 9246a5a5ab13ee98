"""Distinct-divisor-property (DDP) sequencings of finite groups.

Construct, verify, enumerate and count permutations ``g_0 = 1, g_1, ...,
g_{n-1}`` of a finite group whose consecutive divisors ``g_i^-1 g_{i+1}``
are pairwise distinct.
"""

from .constructions import (
    OddAbelianDecomposition,
    ddp_abelian,
    power_of_two_family,
    scale_sequence,
    sizeo_lower_bound,
    slonimsky_abelian,
    slonimsky_cyclic,
    triangular_ddp,
    triangular_variant_ddp,
)
from .ddp import (
    DdpSequence,
    SlonimskySequence,
    Verdict,
    abelian_ddp_exists,
    telescoped_product,
    verify_ddp,
    verify_slonimsky,
)
from .groups import (
    Epimorphism,
    GroupTable,
    Subgroup,
    build_group,
    center,
    element_order,
    involutions,
    parse_descriptor,
    quotient,
    real_elements,
    upper_central_series,
)
from .lifting import (
    LiftPlan,
    build_lift_plan,
    check_lift_precondition,
    enumerate_lifts,
    lift_ddp,
    lift_via_central_series,
    prime_semidirect_ddp,
    semidirect_ddp,
    sqrt_odd_abelian,
)
from .search import a141599_prefix, count_ddp, enumerate_ddp, exists_ddp

__version__ = "0.1.0"

__all__ = [
    "DdpSequence",
    "Epimorphism",
    "GroupTable",
    "LiftPlan",
    "OddAbelianDecomposition",
    "SlonimskySequence",
    "Subgroup",
    "Verdict",
    "a141599_prefix",
    "abelian_ddp_exists",
    "build_group",
    "build_lift_plan",
    "center",
    "check_lift_precondition",
    "count_ddp",
    "ddp_abelian",
    "element_order",
    "enumerate_ddp",
    "enumerate_lifts",
    "exists_ddp",
    "involutions",
    "lift_ddp",
    "lift_via_central_series",
    "parse_descriptor",
    "power_of_two_family",
    "prime_semidirect_ddp",
    "quotient",
    "real_elements",
    "scale_sequence",
    "semidirect_ddp",
    "sizeo_lower_bound",
    "slonimsky_abelian",
    "slonimsky_cyclic",
    "sqrt_odd_abelian",
    "telescoped_product",
    "triangular_ddp",
    "triangular_variant_ddp",
    "upper_central_series",
    "verify_ddp",
    "verify_slonimsky",
]
