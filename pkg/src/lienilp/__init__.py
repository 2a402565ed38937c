"""Lie nilpotency indices of modular group algebras over prime fields.

The package computes both Lie nilpotency indices of KG (brute force on the
ideal chains, and through the Lie dimension subgroup recursion with the
index formula), decides when the lower index reaches its maximal value
|G'| + 1, and cross-validates every route against the others.
"""

from .algebra import (
    GroupAlgebra,
    LiePowerChain,
    build_algebra,
    dimension_subgroup_oracle,
    ideal_closure,
    lie_bracket,
    lower_lie_chain,
    upper_lie_chain,
)
from .catalog import (
    CorpusEntry,
    GroupSpec,
    build,
    build_named,
    semidirect_product,
    spec_from_name,
    standard_corpus,
    sweep_klein_commutator,
)
from .classify import (
    LieReport,
    analyze,
    analyze_full,
    is_lie_nilpotent_group,
    maximal_index_criterion,
    upper_maximal_equality,
)
from .dimension import (
    CEILING,
    DEFAULT_CONVENTION,
    STRICT_GREATER,
    DimensionSeries,
    dimension_series_recursive,
    jennings_upper_index,
    maximal_orders_check,
    maximality_profile,
    series_collapse_check,
    validate_convention,
    weighted_power_sum_inequality,
)
from .fplin import FpSubspace, FpVector, contains, echelon_insert, is_prime, subspace_equal
from .groups import (
    FiniteGroup,
    QuotientGroup,
    Subgroup,
    all_subgroups,
    commutator,
    commutator_subgroup,
    derived_subgroup,
    exponent,
    frattini_subgroup,
    is_cyclic,
    is_klein_four,
    lower_central_series,
    maximal_subgroups,
    minimal_generator_count,
    power_subgroup,
    quotient_group,
    subgroup_closure,
    subgroup_product,
    trivial_subgroup,
    whole_subgroup,
)

__version__ = "0.1.0"
