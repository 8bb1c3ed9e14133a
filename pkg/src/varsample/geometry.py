"""Affine subspaces of F_p^n: sampling, counting, membership, enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadDimensions, DimensionMismatch, TooLarge
from .field import Field, RandomSource

ENUMERATION_CAP = 2**27


def row_reduce(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence[int]], p: int) -> int:
    return len(row_reduce(vectors, p)[1]) if vectors else 0


@dataclass(frozen=True)
class AffineSubspace:
    """The set ``{base + sum_j t_j * basis[j]}``; ``basis`` holds k independent columns."""

    field: Field
    base: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.field.p
        base = tuple(int(x) % p for x in self.base)
        basis = tuple(tuple(int(x) % p for x in col) for col in self.basis)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "basis", basis)
        if any(len(col) != len(base) for col in basis):
            raise DimensionMismatch("basis vectors must match the ambient dimension")
        if rank(basis, p) != len(basis):
            raise BadDimensions("basis vectors are linearly dependent")

    @classmethod
    def _trusted(cls, field: Field, base: tuple, basis: tuple) -> "AffineSubspace":
        # skips normalization and the rank check; inputs already canonical residues
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "base", base)
        object.__setattr__(obj, "basis", basis)
        return obj

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, t: Sequence[int]) -> tuple[int, ...]:
        """Ambient point ``base + B t``."""
        if len(t) != self.dim:
            raise DimensionMismatch(f"{len(t)} parameters for a {self.dim}-dimensional subspace")
        p = self.field.p
        out = list(self.base)
        for tj, col in zip(t, self.basis):
            if tj:
                for i, c in enumerate(col):
                    out[i] += tj * c
        return tuple(x % p for x in out)

    def canonical(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """Set-level key: reduced echelon basis and the coset representative
        with zeros at the pivot coordinates (the lexicographically smallest)."""
        p = self.field.p
        rows, pivots = row_reduce(self.basis, p)
        rep = list(self.base)
        for row, c in zip(rows, pivots):
            f = rep[c]
            if f:
                rep = [(x - f * y) % p for x, y in zip(rep, row)]
        return tuple(tuple(r) for r in rows), tuple(rep)

    def same_set(self, other: "AffineSubspace") -> bool:
        return self.canonical() == other.canonical()


def sample_affine_subspace(field: Field, n: int, k: int, rng: RandomSource) -> AffineSubspace:
    """Uniformly random k-dimensional affine subspace of F_p^n.

    Whole k-tuples of columns are redrawn until independent, so every
    subspace is hit through the same number of ordered bases; the base point
    is uniform, so every coset is equally likely too.
    """
    if not 1 <= k <= n:
        raise BadDimensions(f"need 1 <= k <= n, got k={k}, n={n}")
    p = field.p
    below = rng.below
    while True:
        basis = tuple(tuple(below(p) for _ in range(n)) for _ in range(k))
        if rank(basis, p) == k:
            break
    base = tuple(below(p) for _ in range(n))
    return AffineSubspace._trusted(field, base, basis)


def count_linear_subspaces(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient [n choose k]_q."""
    if not 0 <= k <= n:
        raise BadDimensions(f"need 0 <= k <= n, got k={k}, n={n}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def count_affine_subspaces(n: int, k: int, q: int) -> int:
    return count_linear_subspaces(n, k, q) * q ** (n - k)


def contains(a: AffineSubspace, x: Sequence[int]) -> bool:
    """True iff ``x - base`` lies in the column span of the basis."""
    if len(x) != a.ambient_dim:
        raise DimensionMismatch(f"point in F^{len(x)}, subspace in F^{a.ambient_dim}")
    p = a.field.p
    diff = tuple((int(xi) - bi) % p for xi, bi in zip(x, a.base))
    if not any(diff):
        return True
    return rank(a.basis + (diff,), p) == a.dim


def _echelon_forms(n: int, k: int, p: int) -> Iterator[tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]]:
    for pivots in itertools.combinations(range(n), k):
        # free slots: row r, column c > pivots[r], c not a pivot
        slots = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(slots, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows), pivots


def enumerate_affine_subspaces(field: Field, n: int, k: int, cap: int = ENUMERATION_CAP) -> list[AffineSubspace]:
    """Every k-dimensional affine subspace exactly once, in canonical form."""
    if not 1 <= k <= n:
        raise BadDimensions(f"need 1 <= k <= n, got k={k}, n={n}")
    p = field.p
    if count_affine_subspaces(n, k, p) * n > cap:
        raise TooLarge(f"enumerating {k}-subspaces of F_{p}^{n} exceeds the cap")
    out = []
    for rows, pivots in _echelon_forms(n, k, p):
        free = [c for c in range(n) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rep = [0] * n
            for c, v in zip(free, values):
                rep[c] = v
            out.append(AffineSubspace._trusted(field, tuple(rep), rows))
    return out
