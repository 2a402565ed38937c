"""Exact linear algebra over the prime field F_p.

Vectors are fixed-length residue arrays and subspaces are kept in reduced
row echelon form, so a subspace has exactly one representation and equality
of subspaces is equality of representations.  Everything is immutable;
operations return new values.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "is_prime",
    "FpVector",
    "FpSubspace",
    "echelon_insert",
    "contains",
    "subspace_equal",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    return p


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class FpVector:
    """Immutable vector over F_p; entries are stored reduced into [0, p)."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Sequence[int] | np.ndarray) -> None:
        self.p = _check_modulus(p)
        arr = np.asarray(coords, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("coords must be one-dimensional")
        self.coords = _frozen(arr % self.p)

    @classmethod
    def zero(cls, p: int, n: int) -> "FpVector":
        return cls(p, np.zeros(n, dtype=np.int64))

    @classmethod
    def unit(cls, p: int, n: int, i: int) -> "FpVector":
        if not 0 <= i < n:
            raise ValueError(f"unit index {i} out of range for dimension {n}")
        arr = np.zeros(n, dtype=np.int64)
        arr[i] = 1
        return cls(p, arr)

    @property
    def dim(self) -> int:
        return int(self.coords.shape[0])

    def is_zero(self) -> bool:
        return not self.coords.any()

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.coords)

    def scale(self, c: int) -> "FpVector":
        return FpVector(self.p, (self.coords * (c % self.p)) % self.p)

    def __add__(self, other: "FpVector") -> "FpVector":
        _match(self, other)
        return FpVector(self.p, (self.coords + other.coords) % self.p)

    def __sub__(self, other: "FpVector") -> "FpVector":
        _match(self, other)
        return FpVector(self.p, (self.coords - other.coords) % self.p)

    def __neg__(self) -> "FpVector":
        return FpVector(self.p, (-self.coords) % self.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpVector):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.coords, other.coords)

    def __repr__(self) -> str:
        return f"FpVector(p={self.p}, {self.to_tuple()})"


def _match(a: FpVector, b: FpVector) -> None:
    if a.p != b.p:
        raise ValueError(f"modulus mismatch: {a.p} vs {b.p}")
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


class FpSubspace:
    """Subspace of F_p^N held as a reduced-row-echelon basis.

    Pivot entries are 1, pivot columns are strictly increasing and each pivot
    column is zero in every other basis row.  This form is canonical, so two
    subspaces are equal exactly when their stored bases are identical.
    """

    __slots__ = ("p", "ambient_dim", "rows", "pivot_columns")

    def __init__(
        self,
        p: int,
        ambient_dim: int,
        rows: np.ndarray | None = None,
        pivot_columns: tuple[int, ...] = (),
    ) -> None:
        self.p = _check_modulus(p)
        if ambient_dim < 0:
            raise ValueError("ambient dimension must be non-negative")
        self.ambient_dim = int(ambient_dim)
        if rows is None:
            rows = np.zeros((0, self.ambient_dim), dtype=np.int64)
        self.rows = _frozen(np.asarray(rows, dtype=np.int64))
        self.pivot_columns = tuple(int(c) for c in pivot_columns)
        if self.rows.shape != (len(self.pivot_columns), self.ambient_dim):
            raise ValueError("basis rows inconsistent with pivot columns")

    @classmethod
    def empty(cls, p: int, n: int) -> "FpSubspace":
        return cls(p, n)

    @classmethod
    def full(cls, p: int, n: int) -> "FpSubspace":
        return cls(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @classmethod
    def span(cls, p: int, n: int, vectors: Iterable[FpVector]) -> "FpSubspace":
        space = cls.empty(p, n)
        for v in vectors:
            space, _ = echelon_insert(space, v)
        return space

    @property
    def dimension(self) -> int:
        return len(self.pivot_columns)

    @property
    def basis(self) -> tuple[FpVector, ...]:
        return tuple(FpVector(self.p, row) for row in self.rows)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Residue of ``arr`` after elimination against the basis."""
        arr = np.asarray(arr, dtype=np.int64) % self.p
        if self.dimension:
            coeffs = arr[list(self.pivot_columns)]
            arr = (arr - coeffs @ self.rows) % self.p
        return arr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return subspace_equal(self, other)

    def __repr__(self) -> str:
        return (
            f"FpSubspace(p={self.p}, ambient={self.ambient_dim}, "
            f"dim={self.dimension}, pivots={self.pivot_columns})"
        )


def _match_space(S: FpSubspace, v: FpVector) -> None:
    if S.p != v.p:
        raise ValueError(f"modulus mismatch: {S.p} vs {v.p}")
    if S.ambient_dim != v.dim:
        raise ValueError(f"ambient dimension mismatch: {S.ambient_dim} vs {v.dim}")


def echelon_insert(S: FpSubspace, v: FpVector) -> tuple[FpSubspace, bool]:
    """Return ``(span(S + {v}), grew)`` with the span again in canonical form."""
    _match_space(S, v)
    residue = S.reduce(v.coords)
    if not residue.any():
        return S, False
    lead = int(np.flatnonzero(residue)[0])
    inv = pow(int(residue[lead]), -1, S.p)
    residue = (residue * inv) % S.p
    rows = S.rows
    if S.dimension:
        # Clear the new pivot column in the existing rows to keep reduced form.
        rows = (rows - np.outer(rows[:, lead], residue)) % S.p
    pos = 0
    while pos < len(S.pivot_columns) and S.pivot_columns[pos] < lead:
        pos += 1
    new_rows = np.insert(rows, pos, residue, axis=0)
    new_pivots = S.pivot_columns[:pos] + (lead,) + S.pivot_columns[pos:]
    return FpSubspace(S.p, S.ambient_dim, new_rows, new_pivots), True


def contains(S: FpSubspace, v: FpVector) -> bool:
    _match_space(S, v)
    return not S.reduce(v.coords).any()


def subspace_equal(A: FpSubspace, B: FpSubspace) -> bool:
    if A.p != B.p or A.ambient_dim != B.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    return A.pivot_columns == B.pivot_columns and np.array_equal(A.rows, B.rows)
