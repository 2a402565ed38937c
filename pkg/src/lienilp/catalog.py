"""Builders for the named group families and the test corpus.

The two-generator 2-group families (dihedral, generalized quaternion,
semidihedral, modular maximal-cyclic) are realized by their normal form
a^i b^j, so no general coset enumeration is needed.  Semidirect products
take explicit automorphism actions and power the search for groups whose
derived subgroup is Klein four with nontrivial third central term.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .groups import (
    FiniteGroup,
    derived_subgroup,
    exponent,
    is_cyclic,
    lower_central_series,
    whole_subgroup,
)

__all__ = [
    "GroupSpec",
    "CorpusEntry",
    "SweepRecord",
    "build",
    "build_named",
    "spec_from_name",
    "semidirect_product",
    "sweep_klein_commutator",
    "standard_corpus",
    "group_fingerprint",
    "cyclic_spec",
    "family_spec",
    "product_spec",
    "NAMED_SPECIAL",
]


@dataclass(frozen=True)
class GroupSpec:
    """Recipe for a finite group; ``name`` is its canonical textual form."""

    kind: str
    parameters: dict = field(default_factory=dict)
    name: str = ""


@dataclass(frozen=True)
class CorpusEntry:
    spec: GroupSpec
    p: int
    expect_lie_nilpotent: bool


@dataclass(frozen=True)
class SweepRecord:
    spec: GroupSpec
    order: int
    gamma3_order: int
    fingerprint: tuple


def cyclic_spec(n: int) -> GroupSpec:
    return GroupSpec("cyclic", {"n": n}, f"C{n}")


def family_spec(kind: str, n: int) -> GroupSpec:
    prefix = {"dihedral": "D", "quaternion": "Q", "semidihedral": "SD", "modular": "MD"}[kind]
    min_n = _FAMILY[kind][0]
    if n < min_n:
        raise ValueError(f"{kind} family needs n >= {min_n} (order >= {2 ** min_n}), got n = {n}")
    return GroupSpec(kind, {"n": n}, f"{prefix}{2 ** n}")


def product_spec(*factors: GroupSpec, name: str | None = None) -> GroupSpec:
    if len(factors) < 2:
        raise ValueError("direct product needs at least two factors")
    return GroupSpec(
        "direct_product",
        {"factors": tuple(factors)},
        name or "x".join(f.name for f in factors),
    )


def build(spec: GroupSpec) -> FiniteGroup:
    """Compile a GroupSpec into a Cayley table group."""
    kind = spec.kind
    if kind == "cyclic":
        return _build_cyclic(spec.parameters["n"], spec.name)
    if kind in ("dihedral", "quaternion", "semidihedral", "modular"):
        return _build_two_generator(kind, spec.parameters["n"], spec.name)
    if kind == "direct_product":
        return _build_direct_product(spec.parameters["factors"], spec.name)
    if kind == "semidirect_product":
        return semidirect_product(
            spec.parameters["normal"],
            spec.parameters["acting"],
            spec.parameters["action"],
            name=spec.name,
        )
    if kind == "raw_table":
        return FiniteGroup(
            spec.parameters["table"],
            labels=spec.parameters.get("labels"),
            name=spec.name or "G",
        )
    raise ValueError(f"unknown group kind {kind!r}")


def _build_cyclic(n: int, name: str) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic order must be positive, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteGroup(table, labels=labels, name=name or f"C{n}")


_FAMILY = {
    # e is the conjugation exponent a^b = a^e, t the exponent in b^2 = a^t.
    "dihedral": (3, lambda half: -1, lambda half: 0),
    "quaternion": (3, lambda half: -1, lambda half: half // 2),
    "semidihedral": (4, lambda half: -1 + half // 2, lambda half: 0),
    "modular": (4, lambda half: 1 + half // 2, lambda half: 0),
}


def _build_two_generator(kind: str, n: int, name: str) -> FiniteGroup:
    min_n, e_of, t_of = _FAMILY[kind]
    if n < min_n:
        raise ValueError(f"{kind} family needs n >= {min_n}, got n = {n}")
    half = 2 ** (n - 1)
    e = e_of(half) % half
    t = t_of(half) % half
    return _normal_form_group(half, e, t, name or f"{kind}{2 ** n}")


def _normal_form_group(half: int, e: int, t: int, name: str) -> FiniteGroup:
    """Group on a^i b^j (i < half, j < 2) with a^b = a^e and b^2 = a^t.

    Consistency needs e^2 = 1 and t(e - 1) = 0 modulo the order of a.
    """
    if half < 1:
        raise ValueError("order of a must be positive")
    if math.gcd(e, half) != 1:
        raise ValueError(f"conjugation exponent {e} is not invertible mod {half}")
    if (e * e) % half != 1 % half:
        raise ValueError(f"inconsistent presentation: exponent {e} squared is not 1 mod {half}")
    if (t * (e - 1)) % half != 0:
        raise ValueError("inconsistent presentation: b^2 is not centralized by b")

    def idx(i: int, j: int) -> int:
        return 2 * (i % half) + (j % 2)

    table = [[0] * (2 * half) for _ in range(2 * half)]
    for i1 in range(half):
        for j1 in range(2):
            shift = e if j1 else 1
            for i2 in range(half):
                for j2 in range(2):
                    i = i1 + i2 * shift + t * ((j1 + j2) // 2)
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2)
    labels = []
    for i in range(half):
        for j in range(2):
            if i == 0:
                labels.append("b" if j else "1")
            else:
                a = "a" if i == 1 else f"a^{i}"
                labels.append(f"{a}*b" if j else a)
    G = FiniteGroup(table, labels=labels, name=name)
    a, b = idx(1, 0), idx(0, 1)
    if G.power(a, half) != 0 or G.mul(b, b) != G.power(a, t) or G.conj(a, b) != G.power(a, e):
        raise RuntimeError("normal form construction violates its defining relations")
    return G


def _build_direct_product(factors: Sequence[GroupSpec], name: str) -> FiniteGroup:
    groups = [build(f) for f in factors]
    orders = [g.order for g in groups]
    n = math.prod(orders)

    def unpack(x: int) -> list[int]:
        out = []
        for size in reversed(orders):
            x, r = divmod(x, size)
            out.append(r)
        return out[::-1]

    def pack(coords: Sequence[int]) -> int:
        x = 0
        for c, size in zip(coords, orders):
            x = x * size + c
        return x

    table = [[0] * n for _ in range(n)]
    for x in range(n):
        xs = unpack(x)
        for y in range(n):
            ys = unpack(y)
            table[x][y] = pack([g.mul(a, b) for g, a, b in zip(groups, xs, ys)])
    labels = [
        "(" + ",".join(g.label(c) for g, c in zip(groups, unpack(x))) + ")" for x in range(n)
    ]
    return FiniteGroup(table, labels=labels, name=name, check=False)


def _is_automorphism(N: FiniteGroup, perm: Sequence[int]) -> bool:
    n = N.order
    if len(perm) != n or sorted(perm) != list(range(n)) or perm[0] != 0:
        return False
    t = N.table
    return all(perm[t[a][b]] == t[perm[a]][perm[b]] for a in range(n) for b in range(n))


def semidirect_product(
    n_spec: GroupSpec,
    h_spec: GroupSpec,
    action: Mapping[int, Sequence[int]],
    *,
    name: str | None = None,
) -> FiniteGroup:
    """Semidirect product N x| H from automorphisms attached to generators of H.

    ``action`` maps element indices of H to permutations of N's elements.  The
    keys must generate H, each permutation must be an automorphism of N, and
    the extension along products of keys must be consistent (this is exactly
    compatibility with H's relations).
    """
    N = build(n_spec)
    H = build(h_spec)
    maps: dict[int, tuple[int, ...]] = {0: tuple(range(N.order))}
    for k, perm in action.items():
        perm = tuple(int(x) for x in perm)
        if not _is_automorphism(N, perm):
            raise ValueError(f"action at element {k} is not an automorphism of {N.name}")
        if k == 0 and perm != maps[0]:
            raise ValueError("identity of the acting group must act trivially")
    frontier = [0]
    while frontier:
        h = frontier.pop()
        base = maps[h]
        for k, perm in action.items():
            target = H.mul(h, int(k))
            composed = tuple(base[perm[i]] for i in range(N.order))
            if target in maps:
                if maps[target] != composed:
                    raise ValueError("action is incompatible with the acting group's relations")
            else:
                maps[target] = composed
                frontier.append(target)
    if len(maps) != H.order:
        raise ValueError("action keys do not generate the acting group")

    size = N.order * H.order
    table = [[0] * size for _ in range(size)]
    for n1 in range(N.order):
        for h1 in range(H.order):
            act = maps[h1]
            row = table[n1 * H.order + h1]
            for n2 in range(N.order):
                moved = N.mul(n1, act[n2])
                base = moved * H.order
                hrow = H.table[h1]
                for h2 in range(H.order):
                    row[n2 * H.order + h2] = base + hrow[h2]
    labels = [
        f"({N.label(a)};{H.label(b)})" for a in range(N.order) for b in range(H.order)
    ]
    return FiniteGroup(table, labels=labels, name=name or f"{N.name}:{H.name}")


def _element_coords(factors: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(f) for f in factors)))


def _coords_index(coords: Sequence[int], factors: Sequence[int]) -> int:
    x = 0
    for c, f in zip(coords, factors):
        x = x * f + c
    return x


def _linear_perm(
    factors: Sequence[int], images: Sequence[Sequence[int]]
) -> tuple[int, ...]:
    """Endomorphism of a product of cyclic groups from generator images."""
    elems = _element_coords(factors)
    out = []
    for coords in elems:
        acc = [0] * len(factors)
        for c, img in zip(coords, images):
            for k, (v, f) in enumerate(zip(img, factors)):
                acc[k] = (acc[k] + c * v) % f
        out.append(_coords_index(acc, factors))
    return tuple(out)


def _perm_power(perm: tuple[int, ...], k: int) -> tuple[int, ...]:
    out = tuple(range(len(perm)))
    for _ in range(k):
        out = tuple(perm[i] for i in out)
    return out


def _abelian_automorphisms(factors: Sequence[int], power: int) -> list[tuple[int, ...]]:
    """Automorphisms phi of C_f1 x ... x C_fk with phi^power = id."""
    n = math.prod(factors)
    elems = _element_coords(factors)

    def coord_order(coords: Sequence[int]) -> int:
        return math.lcm(*(f // math.gcd(f, c) for c, f in zip(coords, factors)))

    identity = tuple(range(n))
    candidates = []
    for f in factors:
        candidates.append([e for e in elems if f % coord_order(e) == 0])
    out = []
    for images in itertools.product(*candidates):
        perm = _linear_perm(factors, images)
        if len(set(perm)) != n:
            continue
        if _perm_power(perm, power) != identity:
            continue
        out.append(perm)
    return out


def group_fingerprint(G: FiniteGroup) -> tuple:
    """Cheap isomorphism-invariant signature (may identify non-isomorphic
    groups, good enough for deduplicating sweep output)."""
    orders = tuple(sorted(Counter(G.element_order(g) for g in range(G.order)).items()))
    central = tuple(s.order for s in lower_central_series(G))
    return (G.order, central, orders, derived_subgroup(G).order, exponent(whole_subgroup(G)))


def sweep_klein_commutator(max_order: int = 64) -> list[SweepRecord]:
    """Search semidirect products of small abelian 2-groups by C2 or C4 for
    groups whose derived subgroup is Klein four.

    Records with ``gamma3_order > 1`` witness the exceptional maximal-index
    case at p = 2; records with ``gamma3_order == 1`` are class-2 controls.
    Deduplicated by fingerprint, deterministic order.
    """
    plans = [(4, 2), (2, 2, 2), (4, 4), (8, 2)]
    records = []
    seen = set()
    for factors in plans:
        n_order = math.prod(factors)
        n_spec = (
            product_spec(*(cyclic_spec(f) for f in factors))
            if len(factors) > 1
            else cyclic_spec(factors[0])
        )
        for h_order in (2, 4):
            if n_order * h_order > max_order:
                continue
            h_spec = cyclic_spec(h_order)
            for k, perm in enumerate(_abelian_automorphisms(factors, h_order)):
                if perm == tuple(range(n_order)):
                    continue
                spec = GroupSpec(
                    "semidirect_product",
                    {"normal": n_spec, "acting": h_spec, "action": {1: perm}},
                    f"{n_spec.name}:C{h_order}#{k}",
                )
                G = build(spec)
                derived = derived_subgroup(G)
                if derived.order != 4 or is_cyclic(derived):
                    continue
                fp = group_fingerprint(G)
                if fp in seen:
                    continue
                seen.add(fp)
                central = lower_central_series(G)
                gamma3 = central[2].order if len(central) > 2 else 1
                records.append(
                    SweepRecord(spec=spec, order=G.order, gamma3_order=gamma3, fingerprint=fp)
                )
    records.sort(key=lambda r: (r.order, -r.gamma3_order, r.spec.name))
    return records


def _s3_table() -> tuple[list[list[int]], list[str]]:
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    labels = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(a[b[i]] for i in range(3))] for b in perms] for a in perms
    ]
    return table, labels


def _special_specs() -> dict[str, GroupSpec]:
    table, labels = _s3_table()
    c3 = cyclic_spec(3)
    c4 = cyclic_spec(4)
    heis3 = _linear_perm((3, 3), [(1, 1), (0, 1)])
    heis4 = _linear_perm((4, 4), [(1, 1), (0, 1)])
    shift3 = _linear_perm((3, 3, 3), [(0, 1, 0), (0, 0, 1), (1, 0, 0)])
    return {
        "S3": GroupSpec("raw_table", {"table": table, "labels": labels}, "S3"),
        # Extraspecial groups of order 27; exponent 3 and exponent 9 types.
        "E27exp3": GroupSpec(
            "semidirect_product",
            {"normal": product_spec(c3, c3), "acting": c3, "action": {1: heis3}},
            "E27exp3",
        ),
        "E27exp9": GroupSpec(
            "semidirect_product",
            {
                "normal": cyclic_spec(9),
                "acting": c3,
                "action": {1: tuple((4 * i) % 9 for i in range(9))},
            },
            "E27exp9",
        ),
        # Unitriangular 3x3 matrices over Z/4: class 2 with cyclic derived
        # subgroup of order 4, the smallest such.
        "HeisZ4": GroupSpec(
            "semidirect_product",
            {"normal": product_spec(c4, c4), "acting": c4, "action": {1: heis4}},
            "HeisZ4",
        ),
        # C3 wr C3: the smallest nilpotent group whose derived subgroup is a
        # noncyclic 3-group (order 81, prediction-only in the corpus).
        "C3wrC3": GroupSpec(
            "semidirect_product",
            {"normal": product_spec(c3, c3, c3), "acting": c3, "action": {1: shift3}},
            "C3wrC3",
        ),
    }


NAMED_SPECIAL = tuple(sorted(_special_specs()))

_FAMILY_NAME = re.compile(r"^(SD|MD|D|Q|C)(\d+)$")


def spec_from_name(name: str) -> GroupSpec:
    """Resolve a canonical group name (C12, D16, SD32, S3, C2xD8, ...)."""
    name = name.strip()
    specials = _special_specs()
    if name in specials:
        return specials[name]
    if "x" in name:
        parts = name.split("x")
        return product_spec(*(spec_from_name(part) for part in parts), name=name)
    m = _FAMILY_NAME.match(name)
    if not m:
        raise ValueError(
            f"unknown group name {name!r}; use Cn, D2^n, Q2^n, SD2^n, MD2^n, "
            f"products like C2xD8, or one of {', '.join(NAMED_SPECIAL)}"
        )
    prefix, number = m.group(1), int(m.group(2))
    if prefix == "C":
        if number < 1:
            raise ValueError("cyclic order must be positive")
        return cyclic_spec(number)
    kind = {"D": "dihedral", "Q": "quaternion", "SD": "semidihedral", "MD": "modular"}[prefix]
    n = number.bit_length() - 1
    if 2**n != number:
        raise ValueError(f"{prefix}-family order must be a power of 2, got {number}")
    return family_spec(kind, n)


def build_named(name: str) -> FiniteGroup:
    return build(spec_from_name(name))


def standard_corpus() -> list[CorpusEntry]:
    """Deterministic test corpus of (group spec, prime) pairs.

    Positive entries are Lie nilpotent; the trailing entries are deliberate
    negative controls (non-nilpotent group, or derived subgroup of the wrong
    characteristic).
    """
    entries: list[CorpusEntry] = []

    def add(spec: GroupSpec, p: int, positive: bool = True) -> None:
        entries.append(CorpusEntry(spec=spec, p=p, expect_lie_nilpotent=positive))

    for n in range(1, 17):
        add(cyclic_spec(n), 2)
    for name, p in (("C3", 3), ("C6", 3), ("C9", 3), ("C3xC3", 3), ("C5", 5), ("C10", 5)):
        add(spec_from_name(name), p)
    for n in (3, 4, 5):
        add(family_spec("dihedral", n), 2)
        add(family_spec("quaternion", n), 2)
    for n in (4, 5):
        add(family_spec("semidihedral", n), 2)
        add(family_spec("modular", n), 2)
    for name in ("C2xC2", "C4xC2", "C2xC2xC2", "C2xD8", "D8xC3", "D8xD8"):
        add(spec_from_name(name), 2)
    add(spec_from_name("HeisZ4"), 2)
    add(spec_from_name("E27exp3"), 3)
    add(spec_from_name("E27exp9"), 3)
    add(spec_from_name("C3wrC3"), 3)

    sweep = sweep_klein_commutator(max_order=32)
    witnesses = [r for r in sweep if r.gamma3_order > 1][:2]
    controls = [r for r in sweep if r.gamma3_order == 1][:1]
    for i, rec in enumerate(witnesses, start=1):
        add(replace(rec.spec, name=f"SW{rec.order}-{i}"), 2)
    for i, rec in enumerate(controls, start=1):
        add(replace(rec.spec, name=f"SC{rec.order}-{i}"), 2)

    add(spec_from_name("S3"), 2, positive=False)
    add(spec_from_name("S3"), 3, positive=False)
    add(spec_from_name("D8"), 3, positive=False)
    add(spec_from_name("Q8"), 5, positive=False)
    return entries
