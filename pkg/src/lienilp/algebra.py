"""The group algebra KG over F_p, its Lie power chains and the membership
oracle for Lie dimension subgroups.

Two descending chains of ideals are computed.  The lower chain is driven by
spans of left-normed brackets seeded from group basis elements only (enough,
by bilinearity); the upper chain re-brackets the full basis of the previous
ideal.  Both terminate at zero exactly when KG is Lie nilpotent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fplin import FpSubspace, FpVector, contains, echelon_insert, is_prime
from .groups import FiniteGroup, Subgroup, _witness_generators, derived_subgroup

__all__ = [
    "GroupAlgebra",
    "LiePowerChain",
    "build_algebra",
    "lie_bracket",
    "ideal_closure",
    "lower_lie_chain",
    "upper_lie_chain",
    "dimension_subgroup_oracle",
    "is_ideal",
    "REACHED_ZERO",
    "STABILIZED",
    "BOUND_EXCEEDED",
]

REACHED_ZERO = "reached_zero"
STABILIZED = "stabilized"
BOUND_EXCEEDED = "bound_exceeded"


class GroupAlgebra:
    """KG as coefficient vectors indexed by the elements of G.

    Basis products follow the Cayley table: e_g * e_h = e_{gh}.
    """

    __slots__ = ("group", "p", "dim", "_chains")

    def __init__(self, group: FiniteGroup, p: int) -> None:
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.group = group
        self.p = int(p)
        self.dim = group.order
        self._chains: dict[str, LiePowerChain] = {}

    def zero(self) -> FpVector:
        return FpVector.zero(self.p, self.dim)

    def one(self) -> FpVector:
        return self.basis_vector(0)

    def basis_vector(self, g: int) -> FpVector:
        return FpVector.unit(self.p, self.dim, g)

    def multiply(self, x: FpVector, y: FpVector) -> FpVector:
        self._check(x)
        self._check(y)
        return FpVector(self.p, self._mul_arrays(x.coords, y.coords))

    def _check(self, v: FpVector) -> None:
        if v.p != self.p or v.dim != self.dim:
            raise ValueError("vector does not belong to this algebra")

    def _mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        T = self.group.np_table
        out = np.zeros(self.dim, dtype=np.int64)
        for h in np.flatnonzero(b):
            out[T[:, h]] += int(b[h]) * a
        return out % self.p

    def _left_basis_mul(self, g: int, arr: np.ndarray) -> np.ndarray:
        # (e_g * v)[g*h] = v[h]
        out = np.empty(self.dim, dtype=np.int64)
        out[self.group.np_table[g]] = arr
        return out

    def _right_basis_mul(self, arr: np.ndarray, g: int) -> np.ndarray:
        # (v * e_g)[h*g] = v[h]
        out = np.empty(self.dim, dtype=np.int64)
        out[self.group.np_table[:, g]] = arr
        return out

    def _basis_bracket(self, arr: np.ndarray, g: int) -> np.ndarray:
        return (self._right_basis_mul(arr, g) - self._left_basis_mul(g, arr)) % self.p

    def __repr__(self) -> str:
        return f"GroupAlgebra(F_{self.p}[{self.group.name}], dim={self.dim})"


def build_algebra(G: FiniteGroup, p: int) -> GroupAlgebra:
    return GroupAlgebra(G, p)


def lie_bracket(A: GroupAlgebra, x: FpVector, y: FpVector) -> FpVector:
    """[x, y] = xy - yx."""
    A._check(x)
    A._check(y)
    xy = A._mul_arrays(x.coords, y.coords)
    yx = A._mul_arrays(y.coords, x.coords)
    return FpVector(A.p, (xy - yx) % A.p)


def ideal_closure(A: GroupAlgebra, S: FpSubspace) -> FpSubspace:
    """Smallest two-sided ideal of KG containing S.

    Saturates with basis products e_g * s and s * e_g until the dimension
    stops growing; canonical echelon form makes the result order-independent.
    """
    if S.p != A.p or S.ambient_dim != A.dim:
        raise ValueError("subspace does not live in this algebra")
    space = S
    queue = [np.array(row) for row in S.rows]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for g in range(A.dim):
            w = A._left_basis_mul(g, v)
            space, grew = echelon_insert(space, FpVector(A.p, w))
            if grew:
                queue.append(w)
        for g in range(A.dim):
            w = A._right_basis_mul(v, g)
            space, grew = echelon_insert(space, FpVector(A.p, w))
            if grew:
                queue.append(w)
    return space


def is_ideal(A: GroupAlgebra, S: FpSubspace) -> bool:
    """Check closure of S under basis multiplication from both sides."""
    for row in S.rows:
        for g in range(A.dim):
            if not contains(S, FpVector(A.p, A._left_basis_mul(g, np.array(row)))):
                return False
            if not contains(S, FpVector(A.p, A._right_basis_mul(np.array(row), g))):
                return False
    return True


@dataclass
class LiePowerChain:
    """Descending chain of Lie power ideals; ``terms[0]`` is KG itself.

    ``nilpotency_index`` is the least m with the m-th term zero, or None when
    the chain stabilized at a nonzero ideal or ran out of steps (``status``
    tells which).
    """

    kind: str
    terms: list[FpSubspace]
    nilpotency_index: int | None
    status: str

    def term(self, m: int) -> FpSubspace:
        if m < 1:
            raise ValueError(f"chain index must be >= 1, got {m}")
        if m <= len(self.terms):
            return self.terms[m - 1]
        if self.status == REACHED_ZERO:
            first = self.terms[0]
            return FpSubspace.empty(first.p, first.ambient_dim)
        if self.status == STABILIZED:
            return self.terms[-1]
        raise ValueError(f"chain only computed to depth {len(self.terms)}")


def _default_steps(A: GroupAlgebra) -> int:
    return derived_subgroup(A.group).order + 2


def _bracket_span(A: GroupAlgebra, space: FpSubspace) -> FpSubspace:
    out = FpSubspace.empty(A.p, A.dim)
    for row in space.rows:
        v = np.array(row)
        for g in range(A.dim):
            out, _ = echelon_insert(out, FpVector(A.p, A._basis_bracket(v, g)))
    return out


def lower_lie_chain(A: GroupAlgebra, max_steps: int | None = None) -> LiePowerChain:
    """Chain of ideals generated by left-normed brackets of fixed length.

    Bracket spans are seeded from the previous bracket span, not from the
    previous ideal; bilinearity makes the two seedings generate the same
    ideals while keeping each step |G|^2 brackets at most.
    """
    if max_steps is None:
        max_steps = _default_steps(A)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    cached = A._chains.get("lower")
    if cached is not None and (cached.status != BOUND_EXCEEDED or len(cached.terms) >= max_steps):
        return cached
    full = FpSubspace.full(A.p, A.dim)
    terms = [full]
    seed = full
    nil: int | None = None
    status = BOUND_EXCEEDED
    while len(terms) < max_steps:
        span = _bracket_span(A, seed)
        if span.dimension == 0:
            terms.append(span)
            nil = len(terms)
            status = REACHED_ZERO
            break
        if span.dimension == seed.dimension:
            # span of longer brackets equals the previous one: constant from here on
            status = STABILIZED
            break
        terms.append(ideal_closure(A, span))
        seed = span
    chain = LiePowerChain("lower", terms, nil, status)
    A._chains["lower"] = chain
    return chain


def upper_lie_chain(A: GroupAlgebra, max_steps: int | None = None) -> LiePowerChain:
    """Chain where each term is the ideal generated by brackets of the
    previous ideal with KG."""
    if max_steps is None:
        max_steps = _default_steps(A)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    cached = A._chains.get("upper")
    if cached is not None and (cached.status != BOUND_EXCEEDED or len(cached.terms) >= max_steps):
        return cached
    full = FpSubspace.full(A.p, A.dim)
    terms = [full]
    current = full
    nil: int | None = None
    status = BOUND_EXCEEDED
    while len(terms) < max_steps:
        span = _bracket_span(A, current)
        nxt = ideal_closure(A, span) if span.dimension else span
        if nxt.dimension == 0:
            terms.append(nxt)
            nil = len(terms)
            status = REACHED_ZERO
            break
        if nxt.dimension == current.dimension:
            status = STABILIZED
            break
        terms.append(nxt)
        current = nxt
    chain = LiePowerChain("upper", terms, nil, status)
    A._chains["upper"] = chain
    return chain


def dimension_subgroup_oracle(
    A: GroupAlgebra, m: int, chain: LiePowerChain | None = None
) -> Subgroup:
    """Elements g with e_g - e_1 inside the m-th upper Lie power.

    This is the definitional route to the m-th Lie dimension subgroup; the
    member set is verified to be closed before it is returned.
    """
    if m < 1:
        raise ValueError(f"index must be >= 1, got {m}")
    if chain is None:
        chain = upper_lie_chain(A)
    if chain.kind != "upper":
        raise ValueError("oracle needs the upper chain")
    term = chain.term(m)
    one = np.zeros(A.dim, dtype=np.int64)
    one[0] = 1
    members = []
    for g in range(A.dim):
        eg = np.zeros(A.dim, dtype=np.int64)
        eg[g] = 1
        if contains(term, FpVector(A.p, eg - one)):
            members.append(g)
    member_set = set(members)
    t = A.group.table
    for a in members:
        if A.group.inverse[a] not in member_set:
            raise RuntimeError("oracle member set not closed under inverse")
        for b in members:
            if t[a][b] not in member_set:
                raise RuntimeError("oracle member set not closed under product")
    mask = 0
    for g in members:
        mask |= 1 << g
    return Subgroup(A.group, mask, _witness_generators(A.group, mask), check=False)
