"""Decides when the Lie nilpotency index of KG is maximal and cross-checks
the prediction against brute-force chain computations.

The maximal value of the index is |G'| + 1.  It is attained exactly when G'
is cyclic, or when p = 2, G' is the noncyclic group of order 4 and the third
lower central term is nontrivial.  ``analyze`` evaluates the criterion,
computes the recursion-based series and, within a size cap, the brute-force
chains, and records every consistency check in one report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import algebra as alg
from .dimension import (
    DEFAULT_CONVENTION,
    DimensionSeries,
    dimension_series_recursive,
    jennings_upper_index,
    maximal_orders_check,
    maximality_profile,
    series_collapse_check,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    is_cyclic,
    is_klein_four,
    lower_central_series,
    minimal_generator_count,
    prime_power_base,
    trivial_subgroup,
)

__all__ = [
    "LieReport",
    "AnalysisArtifacts",
    "is_lie_nilpotent_group",
    "maximal_index_criterion",
    "upper_maximal_equality",
    "analyze",
    "analyze_full",
]


def is_lie_nilpotent_group(G: FiniteGroup, p: int) -> bool:
    """KG is Lie nilpotent iff G is nilpotent and |G'| is a power of p."""
    series = lower_central_series(G)
    if not series[-1].is_trivial():
        return False
    derived = series[1] if len(series) > 1 else trivial_subgroup(G)
    if derived.order == 1:
        return True
    pk = prime_power_base(derived.order)
    return pk is not None and pk[0] == p


def maximal_index_criterion(G: FiniteGroup, p: int) -> bool:
    """True exactly when the Lie nilpotency index of KG reaches |G'| + 1.

    Precondition: KG must be Lie nilpotent.
    """
    series = lower_central_series(G)
    if not series[-1].is_trivial():
        raise ValueError("precondition failed: group is not nilpotent")
    derived = series[1] if len(series) > 1 else trivial_subgroup(G)
    if derived.order > 1:
        pk = prime_power_base(derived.order)
        if pk is None or pk[0] != p:
            raise ValueError(
                f"precondition failed: derived subgroup order {derived.order} "
                f"is not a power of {p}"
            )
    if is_cyclic(derived):
        return True
    gamma3 = series[2] if len(series) > 2 else trivial_subgroup(G)
    return p == 2 and is_klein_four(derived) and not gamma3.is_trivial()


@dataclass
class LieReport:
    """Full analysis record for one (G, p)."""

    group_name: str
    order: int
    p: int
    lie_nilpotent: bool
    derived_order: int
    t_lower: int | None = None
    t_upper: int | None = None
    jennings_t_upper: int | None = None
    predicts_maximal: bool | None = None
    observed_maximal: bool | None = None
    d_values: list[int] = field(default_factory=list)
    series_orders: list[int] = field(default_factory=list)
    oracle_orders: list[int] | None = None
    lower_dims: list[int] | None = None
    upper_dims: list[int] | None = None
    convention: str = DEFAULT_CONVENTION
    checks: dict[str, bool] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def bound(self) -> int:
        return self.derived_order + 1

    def passed(self) -> bool:
        return not self.errors and all(self.checks.values())

    def failed_checks(self) -> list[str]:
        return [name for name, ok in sorted(self.checks.items()) if not ok]

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group_name,
            "order": self.order,
            "p": self.p,
            "lie_nilpotent": self.lie_nilpotent,
            "derived_order": self.derived_order,
            "bound": self.bound,
            "t_lower": self.t_lower,
            "t_upper": self.t_upper,
            "jennings_t_upper": self.jennings_t_upper,
            "predicts_maximal": self.predicts_maximal,
            "observed_maximal": self.observed_maximal,
            "d_values": list(self.d_values),
            "series_orders": list(self.series_orders),
            "oracle_orders": None if self.oracle_orders is None else list(self.oracle_orders),
            "lower_dims": None if self.lower_dims is None else list(self.lower_dims),
            "upper_dims": None if self.upper_dims is None else list(self.upper_dims),
            "convention": self.convention,
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
            "errors": list(self.errors),
            "passed": self.passed(),
        }


@dataclass
class AnalysisArtifacts:
    """Intermediate objects kept around for cross-validation and tests."""

    group: FiniteGroup
    derived: Subgroup
    central_series: list[Subgroup]
    algebra: alg.GroupAlgebra | None = None
    lower_chain: alg.LiePowerChain | None = None
    upper_chain: alg.LiePowerChain | None = None
    series: DimensionSeries | None = None
    oracle_terms: list[Subgroup] | None = None


def upper_maximal_equality(report: LieReport) -> bool:
    """If the upper index reaches |G'| + 1 the two indices must coincide."""
    if not report.lie_nilpotent:
        raise ValueError("report is for a non Lie nilpotent algebra")
    if report.t_lower is None or report.t_upper is None:
        raise ValueError("both indices are required; brute-force chains missing")
    if report.t_upper != report.bound:
        return True
    return report.t_lower == report.t_upper


def analyze(
    G: FiniteGroup,
    p: int,
    *,
    name: str | None = None,
    brute_cap: int = 128,
    convention: str = "auto",
    max_steps: int | None = None,
) -> LieReport:
    return analyze_full(
        G, p, name=name, brute_cap=brute_cap, convention=convention, max_steps=max_steps
    )[0]


def analyze_full(
    G: FiniteGroup,
    p: int,
    *,
    name: str | None = None,
    brute_cap: int = 128,
    convention: str = "auto",
    max_steps: int | None = None,
) -> tuple[LieReport, AnalysisArtifacts]:
    """Run the whole pipeline on one (G, p).

    Brute-force chains are computed when |G| <= brute_cap; otherwise the
    report carries the recursion-side quantities only.  Stage failures are
    recorded in ``report.errors`` instead of aborting, so corpus runs always
    complete.
    """
    if convention == "auto":
        convention = DEFAULT_CONVENTION
    central = lower_central_series(G)
    derived = central[1] if len(central) > 1 else trivial_subgroup(G)
    gamma3 = central[2] if len(central) > 2 else trivial_subgroup(G)
    nilpotent = central[-1].is_trivial()
    lie_nilpotent = is_lie_nilpotent_group(G, p)
    report = LieReport(
        group_name=name or G.name,
        order=G.order,
        p=p,
        lie_nilpotent=lie_nilpotent,
        derived_order=derived.order,
        convention=convention,
    )
    artifacts = AnalysisArtifacts(group=G, derived=derived, central_series=central)
    if not lie_nilpotent:
        if G.order <= brute_cap:
            try:
                A = alg.build_algebra(G, p)
                chain = alg.lower_lie_chain(A, max_steps=G.order + 2)
                artifacts.algebra = A
                artifacts.lower_chain = chain
                report.lower_dims = [t.dimension for t in chain.terms]
                report.checks["non_nilpotent_chain_open"] = chain.nilpotency_index is None
            except (ValueError, RuntimeError) as exc:
                report.errors.append(f"chain: {exc}")
        return report, artifacts

    try:
        report.predicts_maximal = maximal_index_criterion(G, p)
    except ValueError as exc:
        report.errors.append(f"criterion: {exc}")

    series = None
    try:
        series = dimension_series_recursive(G, p, convention=convention)
        artifacts.series = series
        report.d_values = list(series.d_values)
        report.series_orders = [t.order for t in series.terms]
        report.jennings_t_upper = jennings_upper_index(series)
        n = series.derived_exponent
        report.checks["d_sum_matches_order"] = (
            sum(series.d(m) for m in range(2, len(series.terms) + 1)) == n
        )
        report.checks["series_collapse"] = series_collapse_check(series) == []
        profile = maximality_profile(series)
        maximal_upper = report.jennings_t_upper == report.bound
        report.checks["profile_iff_formula_maximal"] = profile == maximal_upper
        if profile:
            report.checks["orders_at_maximal"] = maximal_orders_check(series)
        if report.predicts_maximal is not None:
            report.checks["prediction_matches_formula"] = (
                report.predicts_maximal == maximal_upper
            )
        if maximal_upper:
            gens = minimal_generator_count(derived)
            report.checks["generator_bound"] = gens <= (1 if p > 2 else 2)
            if p == 2 and derived.order > 1 and not is_cyclic(derived):
                report.checks["klein_structure"] = (
                    gamma3.order == 2 and is_klein_four(derived)
                )
    except (ValueError, RuntimeError) as exc:
        report.errors.append(f"series: {exc}")

    if G.order <= brute_cap:
        try:
            A = alg.build_algebra(G, p)
            artifacts.algebra = A
            lower = alg.lower_lie_chain(A, max_steps=max_steps)
            upper = alg.upper_lie_chain(A, max_steps=max_steps)
            artifacts.lower_chain = lower
            artifacts.upper_chain = upper
            report.lower_dims = [t.dimension for t in lower.terms]
            report.upper_dims = [t.dimension for t in upper.terms]
            if lower.nilpotency_index is None or upper.nilpotency_index is None:
                report.errors.append(
                    f"chain: no zero term within bound (lower {lower.status}, "
                    f"upper {upper.status})"
                )
            else:
                report.t_lower = lower.nilpotency_index
                report.t_upper = upper.nilpotency_index
                report.checks["index_bound"] = (
                    report.t_lower <= report.t_upper <= report.bound
                )
                report.observed_maximal = report.t_lower == report.bound
                if report.predicts_maximal is not None:
                    report.checks["maximal_biconditional"] = (
                        report.predicts_maximal == report.observed_maximal
                    )
                report.checks["upper_maximal_equality"] = upper_maximal_equality(report)
                if report.jennings_t_upper is not None:
                    report.checks["jennings_matches_upper"] = (
                        report.jennings_t_upper == report.t_upper
                    )
                if p >= 5:
                    report.checks["high_char_equality"] = report.t_lower == report.t_upper
                depth = max(
                    len(series.terms) if series is not None else 0,
                    upper.nilpotency_index,
                )
                oracle_terms = [
                    alg.dimension_subgroup_oracle(A, m, upper) for m in range(1, depth + 1)
                ]
                artifacts.oracle_terms = oracle_terms
                report.oracle_orders = [s.order for s in oracle_terms]
                if series is not None:
                    report.checks["oracle_equivalence"] = _series_matches(
                        series, oracle_terms
                    )
        except (ValueError, RuntimeError) as exc:
            report.errors.append(f"brute force: {exc}")
    return report, artifacts


def _series_matches(series: DimensionSeries, oracle_terms: list[Subgroup]) -> bool:
    G = series.group
    depth = max(len(series.terms), len(oracle_terms))
    for m in range(1, depth + 1):
        want = oracle_terms[m - 1] if m <= len(oracle_terms) else trivial_subgroup(G)
        if series.term(m) != want:
            return False
    return True
