"""Lattice domain types, exact integer linear algebra, and the Schur tuple family.

Points of the box [N]^d are plain tuples of ints, each coordinate in [1, N].
All arithmetic is exact (Python integers); no floating point is used anywhere.

The row-major point indexing convention shared by every module lives here:
``point_index`` maps a point to its 1-based position when the box is listed
in lexicographic order (last coordinate varying fastest).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import InputError

Point = tuple[int, ...]


def box_points(n: int, d: int) -> Iterator[Point]:
    """All points of [n]^d in row-major (lexicographic) order."""
    if n < 1 or d < 1:
        raise InputError(f"box requires n >= 1 and d >= 1, got n={n} d={d}")
    return itertools.product(range(1, n + 1), repeat=d)


def point_index(p: Point, n: int) -> int:
    """1-based row-major index of p in [n]^d; the last coordinate varies fastest."""
    idx = 0
    for c in p:
        if not 1 <= c <= n:
            raise InputError(f"coordinate {c} of {p} outside [1, {n}]")
        idx = idx * n + (c - 1)
    return idx + 1


def point_from_index(idx: int, n: int, d: int) -> Point:
    """Inverse of point_index."""
    if not 1 <= idx <= n**d:
        raise InputError(f"index {idx} outside [1, {n}^{d}]")
    rem = idx - 1
    coords = []
    for _ in range(d):
        rem, c = divmod(rem, n)
        coords.append(c + 1)
    return tuple(reversed(coords))


def vector_sum(points: Sequence[Point]) -> Point:
    return tuple(sum(cs) for cs in zip(*points))


# -- exact linear algebra ----------------------------------------------------

def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of a list of integer vectors.

    Uses fraction-free (Bareiss) elimination; every intermediate value is an
    exact integer. The empty list has rank 0.
    """
    if not vectors:
        return 0
    dim = len(vectors[0])
    if dim < 1:
        raise InputError("vectors must have dimension >= 1")
    if any(len(v) != dim for v in vectors):
        raise InputError("vectors have mismatched dimensions")
    m = [list(v) for v in vectors]
    rows = len(m)
    r = 0
    prev = 1
    for c in range(dim):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, rows):
            for cc in range(c + 1, dim):
                m[i][cc] = (m[i][cc] * m[r][c] - m[i][c] * m[r][cc]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix via Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise InputError("matrix is not square")
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for cc in range(c + 1, n):
                m[i][cc] = (m[i][cc] * m[c][c] - m[i][c] * m[c][cc]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def is_j_nondegenerate(summands: Sequence[Point], j: int) -> bool:
    """True iff the summands contain j linearly independent vectors.

    Equivalent to rank(summands) >= j, which holds iff some j-element subset
    is independent; subsets never need to be enumerated.
    """
    if not summands:
        raise InputError("summands must be non-empty")
    d = len(summands[0])
    if not 1 <= j <= min(d, len(summands)):
        raise InputError(
            f"j={j} outside [1, min(d={d}, {len(summands)} summands)]"
        )
    return rank(summands) >= j


# -- domain types ------------------------------------------------------------

@dataclass(frozen=True)
class SchurTuple:
    """A canonical solution instance: sorted summands plus their componentwise sum."""

    summands: tuple[Point, ...]
    total: Point

    def __post_init__(self) -> None:
        if vector_sum(self.summands) != self.total:
            raise InputError(f"summands {self.summands} do not sum to {self.total}")
        if list(self.summands) != sorted(self.summands):
            raise InputError("summands must be sorted lexicographically")

    def distinct_points(self) -> tuple[Point, ...]:
        return tuple(sorted(set(self.summands) | {self.total}))


@dataclass(frozen=True)
class TupleFamily:
    """The deduplicated family of j-nondegenerate Schur k-tuples of [n]^d."""

    n: int
    d: int
    k: int
    j: int
    tuples: tuple[SchurTuple, ...]

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[SchurTuple]:
        return iter(self.tuples)


@dataclass(frozen=True)
class Coloring:
    """A total assignment [n]^d -> {1, ..., r}, stored row-major."""

    n: int
    d: int
    r: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1 or self.r < 1:
            raise InputError(f"bad coloring parameters n={self.n} d={self.d} r={self.r}")
        if len(self.colors) != self.n**self.d:
            raise InputError(
                f"coloring has {len(self.colors)} entries, expected {self.n**self.d}"
            )
        bad = next((c for c in self.colors if not 1 <= c <= self.r), None)
        if bad is not None:
            raise InputError(f"color {bad} outside [1, {self.r}]")

    def color_of(self, p: Point) -> int:
        return self.colors[point_index(p, self.n) - 1]

    @classmethod
    def from_function(cls, n: int, d: int, r: int, fn: Callable[[Point], int]) -> "Coloring":
        return cls(n, d, r, tuple(fn(p) for p in box_points(n, d)))

    @classmethod
    def constant(cls, n: int, d: int, r: int, color: int = 1) -> "Coloring":
        return cls(n, d, r, (color,) * n**d)


@dataclass(frozen=True)
class Violation:
    """A monochromatic tuple found in a coloring, with the shared color."""

    tuple: SchurTuple
    color: int


# -- the tuple family --------------------------------------------------------

def enumerate_tuples(
    n: int, d: int, k: int, j: int, *, allow_repeated_summands: bool = True
) -> TupleFamily:
    """Enumerate every canonical j-nondegenerate Schur k-tuple in [n]^d.

    A tuple is a non-decreasing multiset of k-1 summand points whose
    componentwise sum stays inside the box and whose summands have rank >= j.
    Repeated summands (e.g. x + x = z) are permitted by default; pass
    allow_repeated_summands=False to restrict to distinct summands.
    Output order is deterministic: lexicographic on (total, summands).
    """
    if n < 1 or d < 1:
        raise InputError(f"need n >= 1 and d >= 1, got n={n} d={d}")
    if k < 3:
        raise InputError(f"need k >= 3, got k={k}")
    if not 1 <= j <= min(d, k - 1):
        raise InputError(f"j={j} outside [1, min(d={d}, k-1={k - 1})]")

    pts = list(box_points(n, d))
    found: list[SchurTuple] = []
    num_summands = k - 1

    def extend(start: int, chosen: list[Point], partial: Point) -> None:
        remaining = num_summands - len(chosen)
        if remaining == 0:
            if rank(chosen) >= j:
                found.append(SchurTuple(tuple(chosen), partial))
            return
        slack = remaining - 1  # later summands contribute at least 1 per coordinate
        for idx in range(start, len(pts)):
            p = pts[idx]
            if partial[0] + p[0] + slack > n:
                break  # first coordinate is non-decreasing along pts
            s = tuple(a + b for a, b in zip(partial, p))
            if any(c + slack > n for c in s):
                continue
            chosen.append(p)
            extend(idx if allow_repeated_summands else idx + 1, chosen, s)
            chosen.pop()

    extend(0, [], (0,) * d)
    found.sort(key=lambda t: (t.total, t.summands))
    return TupleFamily(n, d, k, j, tuple(found))


def verify_free(coloring: Coloring, family: TupleFamily) -> Violation | None:
    """Return None if no family tuple is monochromatic under the coloring,
    else the first violating tuple (in family order) with its color."""
    if (coloring.n, coloring.d) != (family.n, family.d):
        raise InputError(
            f"coloring is over [{coloring.n}]^{coloring.d}, "
            f"family over [{family.n}]^{family.d}"
        )
    color_of = coloring.color_of
    for t in family.tuples:
        c0 = color_of(t.summands[0])
        if color_of(t.total) != c0:
            continue
        if all(color_of(p) == c0 for p in t.summands[1:]):
            return Violation(t, c0)
    return None


# -- dimension lifting (monotonicity in d) -----------------------------------

def induced_coloring(chi: Coloring) -> Coloring:
    """Restrict a coloring of [n]^(d+1) to [n]^d by duplicating the last coordinate:
    the induced color of (n_1, ..., n_d) is chi(n_1, ..., n_d, n_d)."""
    if chi.d < 2:
        raise InputError("induced coloring needs dimension >= 2")
    return Coloring.from_function(
        chi.n, chi.d - 1, chi.r, lambda p: chi.color_of(p + (p[-1],))
    )


def lift_solution(
    summands: Sequence[Point], total: Point
) -> tuple[tuple[Point, ...], Point]:
    """Lift a solution of the Schur equation from dimension d to d+1 by the
    map x -> (x_1, ..., x_d, x_d). Preserves the equation and the rank."""
    if vector_sum(summands) != total:
        raise InputError(f"summands {tuple(summands)} do not sum to {total}")
    lifted = tuple(p + (p[-1],) for p in summands)
    return lifted, total + (total[-1],)
