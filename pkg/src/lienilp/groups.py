"""Finite groups as dense Cayley tables, with exact subgroup machinery.

Elements are the indices 0..n-1 and element 0 is required to be the
identity.  Subgroups are bitmasks over element indices, so subgroup equality
and containment are single integer comparisons.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "QuotientGroup",
    "commutator",
    "subgroup_closure",
    "commutator_subgroup",
    "derived_subgroup",
    "lower_central_series",
    "is_nilpotent",
    "all_subgroups",
    "maximal_subgroups",
    "frattini_subgroup",
    "power_subgroup",
    "subgroup_product",
    "exponent",
    "is_cyclic",
    "is_klein_four",
    "minimal_generator_count",
    "quotient_group",
    "trivial_subgroup",
    "whole_subgroup",
    "prime_power_base",
]

_ASSOC_EXHAUSTIVE_LIMIT = 256
_ASSOC_SAMPLES = 100_000


def prime_power_base(n: int) -> tuple[int, int] | None:
    """Return ``(q, k)`` with ``n = q**k`` for a prime q, or None.

    ``n = 1`` yields ``None``; callers treat the trivial group separately.
    """
    if n < 2:
        return None
    q = 2
    while q * q <= n:
        if n % q == 0:
            k = 0
            m = n
            while m % q == 0:
                m //= q
                k += 1
            return (q, k) if m == 1 else None
        q += 1
    return (n, 1)


class FiniteGroup:
    """Group on 0..n-1 defined by its full multiplication table.

    Construction validates element 0 as a two-sided identity, derives the
    inverse table and checks associativity (exhaustively up to order 256,
    by 10^5 sampled triples above that).
    """

    __slots__ = ("order", "table", "identity", "inverse", "labels", "name", "np_table")

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        *,
        labels: Sequence[str] | None = None,
        name: str = "G",
        check: bool = True,
    ) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if n == 0:
            raise ValueError("multiplication table is empty")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"table row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise ValueError(f"table entry {x} out of range [0, {n})")
        self.order = n
        self.table = rows
        self.identity = 0
        self.name = name
        arr = np.asarray(rows, dtype=np.int64)
        arr.flags.writeable = False
        self.np_table = arr
        if check:
            for j in range(n):
                if rows[0][j] != j or rows[j][0] != j:
                    raise ValueError("element 0 is not a two-sided identity")
        inverse = []
        for i in range(n):
            inv = next((j for j in range(n) if rows[i][j] == 0 and rows[j][i] == 0), None)
            if inv is None:
                raise ValueError(f"element {i} has no two-sided inverse")
            inverse.append(inv)
        self.inverse = tuple(inverse)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("labels length does not match group order")
        self.labels = labels
        if check:
            _check_associative(self.np_table, rows)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """g^h = h^-1 g h."""
        t = self.table
        return t[t[self.inverse[h]][g]][h]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        out = 0
        for _ in range(k):
            out = self.table[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def _check_associative(T: np.ndarray, rows: tuple[tuple[int, ...], ...]) -> None:
    n = T.shape[0]
    if n <= _ASSOC_EXHAUSTIVE_LIMIT:
        block = max(1, (1 << 22) // (n * n))
        for start in range(0, n, block):
            part = T[start : start + block]
            left = T[part]           # left[i,j,k] = T[T[start+i, j], k]
            right = part[:, T]       # right[i,j,k] = T[start+i, T[j, k]]
            if not np.array_equal(left, right):
                i, j, k = (int(x[0]) for x in np.nonzero(left != right))
                raise ValueError(
                    f"associativity fails at ({start + i}, {j}, {k}): "
                    f"({start + i}*{j})*{k} != {start + i}*({j}*{k})"
                )
    else:
        rng = random.Random(0xA55)
        for _ in range(_ASSOC_SAMPLES):
            i = rng.randrange(n)
            j = rng.randrange(n)
            k = rng.randrange(n)
            if rows[rows[i][j]][k] != rows[i][rows[j][k]]:
                raise ValueError(f"associativity fails at sampled triple ({i}, {j}, {k})")


def _mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _closure_mask(G: FiniteGroup, gens: Sequence[int]) -> int:
    """Mask of the subgroup generated by ``gens`` (BFS over right products)."""
    t = G.table
    mask = 1
    queue = [0]
    while queue:
        x = queue.pop()
        row = t[x]
        for s in gens:
            y = row[s]
            if not (mask >> y) & 1:
                mask |= 1 << y
                queue.append(y)
    return mask


def _witness_generators(G: FiniteGroup, mask: int) -> tuple[int, ...]:
    """Small generating set for the subgroup with the given member mask."""
    gens: list[int] = []
    have = 1
    for x in _bits(mask):
        if not (have >> x) & 1:
            gens.append(x)
            have = _closure_mask(G, gens)
    return tuple(gens)


class Subgroup:
    """Subset of a FiniteGroup closed under product and inverse.

    ``mask`` is the member bitmask, ``generators`` a witness list whose
    closure is the whole member set.
    """

    __slots__ = ("parent", "mask", "generators")

    def __init__(
        self,
        parent: FiniteGroup,
        mask: int,
        generators: Sequence[int] = (),
        *,
        check: bool = True,
    ) -> None:
        self.parent = parent
        self.mask = int(mask)
        self.generators = tuple(int(g) for g in generators)
        if check:
            if not self.mask & 1:
                raise ValueError("subgroup does not contain the identity")
            members = _bits(self.mask)
            t = parent.table
            for a in members:
                if not (self.mask >> parent.inverse[a]) & 1:
                    raise ValueError(f"subgroup not closed under inverse at {a}")
                row = t[a]
                for b in members:
                    if not (self.mask >> row[b]) & 1:
                        raise ValueError(f"subgroup not closed under product at ({a}, {b})")
            if _closure_mask(parent, self.generators) != self.mask:
                raise ValueError("generator witness does not generate the subgroup")

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> list[int]:
        return _bits(self.mask)

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def issubset(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return self.mask & other.mask == self.mask

    def is_normal(self) -> bool:
        G = self.parent
        for g in range(G.order):
            for h in self.elements():
                if G.conj(h, g) not in self:
                    return False
        return True

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Subgroup as a standalone FiniteGroup plus the embedding index map."""
        members = self.elements()
        pos = {g: i for i, g in enumerate(members)}
        t = self.parent.table
        table = [[pos[t[a][b]] for b in members] for a in members]
        labels = tuple(self.parent.label(g) for g in members)
        name = f"{self.parent.name}<{self.order}>"
        return FiniteGroup(table, labels=labels, name=name, check=False), tuple(members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.name})"


def _same_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise ValueError("subgroups belong to different parent groups")


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, 1, (), check=False)


def whole_subgroup(G: FiniteGroup) -> Subgroup:
    mask = (1 << G.order) - 1
    return Subgroup(G, mask, _witness_generators(G, mask), check=False)


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    """(g, h) = g^-1 h^-1 g h."""
    if not (0 <= g < G.order and 0 <= h < G.order):
        raise ValueError(f"element index out of range: ({g}, {h})")
    t = G.table
    return t[t[t[G.inverse[g]][G.inverse[h]]][g]][h]


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``; an empty seed gives the trivial one."""
    gens: list[int] = []
    for g in seed:
        g = int(g)
        if not 0 <= g < G.order:
            raise ValueError(f"element index out of range: {g}")
        if g != 0 and g not in gens:
            gens.append(g)
    mask = _closure_mask(G, gens)
    return Subgroup(G, mask, tuple(gens) or (0,), check=False)


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """Subgroup generated by all (h, k), h in H, k in K."""
    if H.parent is not G or K.parent is not G:
        raise ValueError("subgroups do not belong to the given group")
    comms = {commutator(G, h, k) for h in H.elements() for k in K.elements()}
    comms.discard(0)
    mask = _closure_mask(G, sorted(comms))
    return Subgroup(G, mask, _witness_generators(G, mask), check=False)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    whole = whole_subgroup(G)
    return commutator_subgroup(G, whole, whole)


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """Terms of the lower central series until they stop changing.

    The group is nilpotent exactly when the last term is trivial.
    """
    whole = whole_subgroup(G)
    series = [whole]
    while True:
        nxt = commutator_subgroup(G, series[-1], whole)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1].is_trivial()


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by closing joins with cyclic subgroups."""
    n = G.order
    cyclic: dict[int, int] = {}
    for g in range(1, n):
        m = _closure_mask(G, [g])
        cyclic.setdefault(m, g)
    cyc_items = sorted(cyclic.items())
    found: dict[int, tuple[int, ...]] = {1: ()}
    queue = [1]
    while queue:
        mask = queue.pop()
        gens = found[mask]
        for cmask, g in cyc_items:
            if cmask | mask == mask:
                continue
            new_gens = gens + (g,)
            new_mask = _closure_mask(G, new_gens)
            if new_mask not in found:
                found[new_mask] = new_gens
                queue.append(new_mask)
    subs = [Subgroup(G, m, gens or (0,), check=False) for m, gens in found.items()]
    subs.sort(key=lambda H: (H.order, H.mask))
    return subs


def maximal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    proper = [H for H in all_subgroups(G) if not H.is_whole()]
    out = []
    for H in proper:
        if not any(K.order > H.order and H.mask & K.mask == H.mask for K in proper):
            out.append(H)
    return out


def frattini_subgroup(G: FiniteGroup) -> Subgroup:
    """Intersection of all maximal subgroups.

    For p-groups the result is cross-checked against the product of the
    derived subgroup and the subgroup of p-th powers.
    """
    if G.order == 1:
        return whole_subgroup(G)
    mask = (1 << G.order) - 1
    for M in maximal_subgroups(G):
        mask &= M.mask
    phi = Subgroup(G, mask, _witness_generators(G, mask), check=False)
    pk = prime_power_base(G.order)
    if pk is not None:
        p = pk[0]
        alt = subgroup_product(derived_subgroup(G), power_subgroup(G, whole_subgroup(G), p))
        if alt.mask != phi.mask:
            raise RuntimeError("Frattini computations disagree; corrupt group data")
    return phi


def power_subgroup(G: FiniteGroup, H: Subgroup, k: int) -> Subgroup:
    """Subgroup generated by the k-th powers of the elements of H."""
    if H.parent is not G:
        raise ValueError("subgroup does not belong to the given group")
    if k <= 0:
        raise ValueError(f"power exponent must be positive, got {k}")
    powers = {G.power(h, k) for h in H.elements()}
    powers.discard(0)
    mask = _closure_mask(G, sorted(powers))
    return Subgroup(G, mask, _witness_generators(G, mask), check=False)


def subgroup_product(A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by the set product AB.

    If neither factor is normal the set product need not itself be a group;
    the closure is returned anyway with a warning.
    """
    _same_parent(A, B)
    G = A.parent
    if not (A.is_normal() or B.is_normal()):
        warnings.warn(
            "neither factor is normal; returning the closure of the set product",
            stacklevel=2,
        )
    t = G.table
    products = {t[a][b] for a in A.elements() for b in B.elements()}
    products.discard(0)
    mask = _closure_mask(G, sorted(products))
    gens = tuple(dict.fromkeys(A.generators + B.generators)) or (0,)
    if _closure_mask(G, gens) != mask:
        gens = _witness_generators(G, mask)
    return Subgroup(G, mask, gens, check=False)


def exponent(H: Subgroup) -> int:
    out = 1
    for g in H.elements():
        out = math.lcm(out, H.parent.element_order(g))
    return out


def is_cyclic(H: Subgroup) -> bool:
    n = H.order
    return any(H.parent.element_order(g) == n for g in H.elements())


def is_klein_four(H: Subgroup) -> bool:
    return H.order == 4 and not is_cyclic(H)


def minimal_generator_count(H: Subgroup) -> int:
    """Minimal number of generators of a group of prime-power order.

    Computed as the rank of H modulo its Frattini subgroup.
    """
    if H.order == 1:
        return 0
    pk = prime_power_base(H.order)
    if pk is None:
        raise ValueError(f"order {H.order} is not a prime power")
    q = pk[0]
    group, _ = H.as_group()
    phi = frattini_subgroup(group)
    quotient = quotient_group(group, phi)
    rank = 0
    m = quotient.quotient.order
    while m > 1:
        m //= q
        rank += 1
    return rank


@dataclass(frozen=True)
class QuotientGroup:
    """Quotient G/N with the projection map and its kernel."""

    quotient: FiniteGroup
    projection: tuple[int, ...]
    kernel: Subgroup


def quotient_group(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    if N.parent is not G:
        raise ValueError("kernel does not belong to the given group")
    if not N.is_normal():
        raise ValueError("cannot quotient by a non-normal subgroup")
    t = G.table
    members = N.elements()
    rep_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if rep_of[g] >= 0:
            continue
        coset = sorted(t[h][g] for h in members)
        rep = coset[0]
        for x in coset:
            rep_of[x] = rep
        reps.append(rep)
    reps.sort()
    index = {r: i for i, r in enumerate(reps)}
    table = [[index[rep_of[t[a][b]]] for b in reps] for a in reps]
    labels = tuple(f"[{G.label(r)}]" for r in reps)
    quotient = FiniteGroup(table, labels=labels, name=f"{G.name}/N", check=False)
    projection = tuple(index[rep_of[g]] for g in range(G.order))
    for a in range(G.order):
        for b in range(G.order):
            if projection[t[a][b]] != table[projection[a]][projection[b]]:
                raise RuntimeError("projection is not a homomorphism; corrupt data")
    return QuotientGroup(quotient=quotient, projection=projection, kernel=N)
