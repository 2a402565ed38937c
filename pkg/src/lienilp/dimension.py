"""Group-theoretic computation of Lie dimension subgroups.

The series starts at the whole group, drops to the derived subgroup, and
from there each term is (previous term, G) times a p-th power of an earlier
term.  Which earlier term is controlled by a rounding convention: the
reference index involves a ceiling-like function of m/p, and the two natural
readings ("least integer >= m/p" versus "least integer > m/p") disagree
exactly when p divides m.  Both are implemented; ``validate_convention``
compares them against the definitional membership oracle and the build pins
``ceiling`` as the default, which is the reading the oracle confirms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups import (
    FiniteGroup,
    Subgroup,
    commutator_subgroup,
    derived_subgroup,
    exponent,
    is_nilpotent,
    power_subgroup,
    prime_power_base,
    subgroup_product,
    trivial_subgroup,
    whole_subgroup,
)

__all__ = [
    "CEILING",
    "STRICT_GREATER",
    "CONVENTIONS",
    "DEFAULT_CONVENTION",
    "DimensionSeries",
    "dimension_series_recursive",
    "jennings_upper_index",
    "maximality_profile",
    "maximal_orders_check",
    "series_collapse_check",
    "weighted_power_sum_inequality",
    "ConventionReport",
    "validate_convention",
]

CEILING = "ceiling"
STRICT_GREATER = "strict-greater"
CONVENTIONS = (CEILING, STRICT_GREATER)

# Pinned by the corpus validation run: the ceiling reading reproduces the
# membership oracle on every test group, the strict-greater reading does not
# (order-32 two-generator 2-groups already separate them).
DEFAULT_CONVENTION = CEILING


def _reference_index(m: int, p: int, convention: str) -> int:
    """Index of the series term whose p-th powers enter at step m + 1."""
    if convention == CEILING:
        return -(-m // p) + 1
    if convention == STRICT_GREATER:
        return m // p + 2
    raise ValueError(f"unknown convention {convention!r}")


@dataclass
class DimensionSeries:
    """Lie dimension subgroups of (G, p) with their step exponents.

    ``terms[m-1]`` is the m-th subgroup; ``d_values[m-1]`` is the exponent d
    with p^d = [terms[m-1] : terms[m]].  For the first step of a group whose
    order is not a p-power only the p-part of the index is recorded; every
    later index is a genuine p-power.
    """

    group: FiniteGroup
    p: int
    terms: list[Subgroup]
    d_values: list[int]
    convention: str = DEFAULT_CONVENTION

    @property
    def complete(self) -> bool:
        return bool(self.terms) and self.terms[-1].is_trivial()

    def term(self, m: int) -> Subgroup:
        if m < 1:
            raise ValueError(f"series index must be >= 1, got {m}")
        if m <= len(self.terms):
            return self.terms[m - 1]
        if self.complete:
            return trivial_subgroup(self.group)
        raise ValueError(f"series only computed to depth {len(self.terms)}")

    def d(self, m: int) -> int:
        if m < 1:
            raise ValueError(f"series index must be >= 1, got {m}")
        if m <= len(self.d_values):
            return self.d_values[m - 1]
        if self.complete:
            return 0
        raise ValueError(f"series only computed to depth {len(self.terms)}")

    @property
    def derived_exponent(self) -> int:
        """n with |second term| = p^n."""
        order = self.term(2).order
        if order == 1:
            return 0
        pk = prime_power_base(order)
        if pk is None or pk[0] != self.p:
            raise ValueError("second series term is not a p-group")
        return pk[1]


def _p_valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def dimension_series_recursive(
    G: FiniteGroup, p: int, convention: str = DEFAULT_CONVENTION
) -> DimensionSeries:
    """Full dimension subgroup series of (G, p) from the recursion.

    Requires G nilpotent with a p-group derived subgroup; outside that range
    the recursion has no meaning and a ValueError is raised.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if not is_nilpotent(G):
        raise ValueError("group is not nilpotent")
    derived = derived_subgroup(G)
    if derived.order > 1:
        pk = prime_power_base(derived.order)
        if pk is None or pk[0] != p:
            raise ValueError(f"derived subgroup has order {derived.order}, not a power of {p}")
    whole = whole_subgroup(G)
    terms = [whole, derived]
    cap = p * derived.order + 8
    while not (terms[-1].is_trivial() and terms[-2].is_trivial()):
        if len(terms) > cap:
            raise ValueError("dimension series failed to stabilize (bad convention?)")
        m = len(terms)
        comm = commutator_subgroup(G, terms[m - 1], whole)
        j = _reference_index(m, p, convention)
        if j <= m:
            power = power_subgroup(G, terms[j - 1], p)
            nxt = subgroup_product(comm, power)
        else:
            # Self-referential case (strict-greater reading at p | m = p):
            # take the least fixed point of X = comm * X^p.
            nxt = comm
            while True:
                step = subgroup_product(comm, power_subgroup(G, nxt, p))
                if step == nxt:
                    break
                nxt = step
        terms.append(nxt)
    d_values = []
    for m in range(1, len(terms)):
        index = terms[m - 1].order // terms[m].order
        v, rest = _p_valuation(index, p)
        if rest != 1 and m >= 2:
            raise RuntimeError(f"index at step {m} is {index}, not a power of {p}")
        d_values.append(v)
    return DimensionSeries(group=G, p=p, terms=terms, d_values=d_values, convention=convention)


def jennings_upper_index(S: DimensionSeries) -> int:
    """Upper Lie nilpotency index from the step exponents:
    2 + (p - 1) * sum over m >= 1 of m * d_(m+1)."""
    if not S.complete:
        raise ValueError("series is incomplete; cannot evaluate the index formula")
    total = sum(m * S.d(m + 1) for m in range(1, len(S.terms)))
    return 2 + (S.p - 1) * total


def maximality_profile(S: DimensionSeries) -> bool:
    """True when the step exponents are 1 exactly at indices p^i + 1 for
    0 <= i < n (with |second term| = p^n) and 0 elsewhere past the first."""
    if not S.complete:
        raise ValueError("series is incomplete")
    n = S.derived_exponent
    wanted = {S.p**i + 1 for i in range(n)}
    top = max(len(S.d_values) + 1, max(wanted, default=1))
    for j in range(2, top + 1):
        expected = 1 if j in wanted else 0
        if S.d(j) != expected:
            return False
    return True


def maximal_orders_check(S: DimensionSeries) -> bool:
    """Orders |term(p^i + 1)| = p^(n-i) for 0 <= i <= n; only meaningful on a
    maximal profile, hence the precondition."""
    if not maximality_profile(S):
        raise ValueError("order check requires the maximal step-exponent profile")
    n = S.derived_exponent
    return all(S.term(S.p**i + 1).order == S.p ** (n - i) for i in range(n + 1))


def series_collapse_check(S: DimensionSeries) -> list[tuple[int, int]]:
    """Vanishing-step implications: if d_(m+1) = 0 with m a power of p, or
    with p^(l-1) dividing m (p^l the exponent of the derived subgroup), the
    (m+1)-th term must already be trivial.

    Returns the violations as (m, clause) pairs; empty means both implications
    hold along the whole series.
    """
    if not S.complete:
        raise ValueError("series is incomplete")
    p = S.p
    exp_derived = exponent(S.term(2))
    l = 0
    e = exp_derived
    while e % p == 0:
        e //= p
        l += 1
    divisor = p ** (l - 1) if l >= 1 else 1
    violations = []
    for m in range(1, len(S.terms)):
        if S.d(m + 1) != 0:
            continue
        if _is_power_of(m, p) and not S.term(m + 1).is_trivial():
            violations.append((m, 1))
        if m % divisor == 0 and not S.term(m + 1).is_trivial():
            violations.append((m, 2))
    return violations


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def weighted_power_sum_inequality(p: int, s: int, n: int, m: Sequence[int]) -> bool:
    """Evaluate sum(m_i * p^i, i < s) < sum(p^i, i < n) for s < n and
    sum(m_i) = n.

    The inequality is a theorem whenever every part is positive (which is how
    it gets used: the parts are step exponents below the first vanishing
    index).  Zero parts are accepted and evaluated honestly; they can violate
    the inequality, e.g. p=2, s=3, n=4, m=(0, 0, 4).
    """
    if p < 2:
        raise ValueError(f"base must be at least 2, got {p}")
    if not s < n:
        raise ValueError(f"need s < n, got s={s}, n={n}")
    if len(m) != s:
        raise ValueError(f"expected {s} summands, got {len(m)}")
    if any(x < 0 for x in m):
        raise ValueError("summands must be non-negative")
    if sum(m) != n:
        raise ValueError(f"summands must total {n}, got {sum(m)}")
    return sum(x * p**i for i, x in enumerate(m)) < sum(p**i for i in range(n))


@dataclass
class ConventionReport:
    """Outcome of checking each rounding convention against the oracle."""

    consistent: dict[str, bool]
    mismatches: dict[str, list[str]] = field(default_factory=dict)
    chosen: str | None = None


def validate_convention(
    cases: Iterable[tuple[str, FiniteGroup, int, Sequence[Subgroup]]],
) -> ConventionReport:
    """Compare both conventions against definitional oracle series.

    ``cases`` supplies (label, G, p, oracle_terms) with oracle_terms the
    membership-oracle subgroups from index 1 until trivial.  The chosen
    convention is the unique consistent one; if the cases cannot separate
    them the pinned default wins.
    """
    materialized = list(cases)
    consistent = {}
    mismatches: dict[str, list[str]] = {}
    for convention in CONVENTIONS:
        bad: list[str] = []
        for label, G, p, oracle_terms in materialized:
            try:
                series = dimension_series_recursive(G, p, convention=convention)
            except (ValueError, RuntimeError):
                bad.append(f"{label} (series failed)")
                continue
            depth = max(len(series.terms), len(oracle_terms))
            for m in range(1, depth + 1):
                want = (
                    oracle_terms[m - 1]
                    if m <= len(oracle_terms)
                    else trivial_subgroup(G)
                )
                if series.term(m) != want:
                    bad.append(f"{label} at index {m}")
                    break
        consistent[convention] = not bad
        if bad:
            mismatches[convention] = bad
    good = [c for c in CONVENTIONS if consistent[c]]
    if len(good) == 1:
        chosen = good[0]
    elif DEFAULT_CONVENTION in good:
        chosen = DEFAULT_CONVENTION
    else:
        chosen = None
    return ConventionReport(consistent=consistent, mismatches=mismatches, chosen=chosen)
