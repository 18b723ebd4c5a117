"""CNF compilation of coloring-avoidance problems, and model decoding.

Variable numbering convention (shared with every DIMACS file this package
emits): point p of [N]^d has row-major index rm(p) = 1 + sum_t (p_t - 1) *
N^(d-t), and the boolean variable "p has color m" (1 <= m <= r-1) is numbered

    var(p, m) = (rm(p) - 1) * (r - 1) + m.

This is a bijection onto [1, (r-1) * N^d]. A point has color r exactly when
all of its r-1 variables are false.

Clause emission order is fixed so byte-identical DIMACS output is reproducible:
exactly-one-color clauses first (points row-major, color pairs lexicographic),
then per-tuple clauses in family order, each tuple contributing its r-1
negative clauses (color 1 .. r-1) followed by one positive clause. Literals
inside a clause ascend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InputError, IntegrityError
from .lattice import (
    Coloring,
    Point,
    TupleFamily,
    box_points,
    enumerate_tuples,
    point_from_index,
    point_index,
)

Clause = tuple[int, ...]


@dataclass(frozen=True)
class EncodingMeta:
    """The (N, d, r) variable-mapping parameters, plus (k, j) provenance."""

    n: int
    d: int
    r: int
    k: int | None = None
    j: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1 or self.r < 1:
            raise InputError(f"bad encoding parameters n={self.n} d={self.d} r={self.r}")

    @property
    def num_points(self) -> int:
        return self.n**self.d

    @property
    def num_vars(self) -> int:
        return (self.r - 1) * self.num_points


@dataclass(frozen=True)
class CnfFormula:
    """Numbered boolean variables plus clauses (signed variable tuples).

    The empty clause is permitted: it arises only in the degenerate r=1
    encoding of a non-empty tuple family, where the formula is trivially
    unsatisfiable (a 1-coloring cannot avoid anything).
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    meta: EncodingMeta | None = None

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise InputError("num_vars must be >= 0")
        for clause in self.clauses:
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InputError(f"literal {lit} outside [1, {self.num_vars}]")
                if -lit in seen:
                    raise InputError(f"clause {clause} contains {lit} and {-lit}")
                seen.add(lit)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def var_index(p: Point, m: int, meta: EncodingMeta) -> int:
    """DIMACS variable number of "point p has color m"."""
    if not 1 <= m <= meta.r - 1:
        raise InputError(f"color index m={m} outside [1, {meta.r - 1}]")
    if len(p) != meta.d:
        raise InputError(f"point {p} is not {meta.d}-dimensional")
    return (point_index(p, meta.n) - 1) * (meta.r - 1) + m


def var_point_color(v: int, meta: EncodingMeta) -> tuple[Point, int]:
    """Inverse of var_index."""
    if not 1 <= v <= meta.num_vars:
        raise InputError(f"variable {v} outside [1, {meta.num_vars}]")
    pm, m = divmod(v - 1, meta.r - 1)
    return point_from_index(pm + 1, meta.n, meta.d), m + 1


def encode_distinctness(meta: EncodingMeta) -> list[Clause]:
    """At-most-one-color clauses: for each point and each color pair i < j <= r-1,
    the 2-clause (not phi_i(p) or not phi_j(p)). Empty for r <= 2."""
    clauses: list[Clause] = []
    r = meta.r
    for p in box_points(meta.n, meta.d):
        base = (point_index(p, meta.n) - 1) * (r - 1)
        for i in range(1, r):
            for j in range(i + 1, r):
                clauses.append((-(base + i), -(base + j)))
    return clauses


def encode_tuple_clauses(family: TupleFamily, meta: EncodingMeta) -> list[Clause]:
    """Per-tuple clauses forbidding a monochromatic tuple in any of the r colors.

    For a tuple with distinct point set P: one clause (or over p in P of
    not phi_i(p)) for each i in [r-1], plus one positive clause (or over
    i, p of phi_i(p)) forbidding "all of P has color r". Exactly r clauses
    per tuple; duplicate literals are removed via the distinct point set.
    """
    if (family.n, family.d) != (meta.n, meta.d):
        raise InputError(
            f"family over [{family.n}]^{family.d} does not match meta "
            f"[{meta.n}]^{meta.d}"
        )
    clauses: list[Clause] = []
    r = meta.r
    for t in family.tuples:
        bases = [
            (point_index(p, meta.n) - 1) * (r - 1) for p in t.distinct_points()
        ]
        for i in range(1, r):
            clauses.append(tuple(-(b + i) for b in bases))
        clauses.append(tuple(b + i for b in bases for i in range(1, r)))
    return clauses


def encode(
    n: int,
    d: int,
    k: int,
    j: int,
    r: int,
    *,
    family: TupleFamily | None = None,
    fix_first_point_color: bool = False,
) -> CnfFormula:
    """Compile "some r-coloring of [n]^d avoids every j-nondegenerate Schur
    k-tuple" to CNF. Satisfiable iff such a free coloring exists.

    fix_first_point_color appends the unit clause phi_1((1,...,1)) — a sound
    symmetry-breaking extension (colors are interchangeable), NOT part of the
    default encoding; golden files cover the default only.
    """
    if r < 1:
        raise InputError(f"need r >= 1, got r={r}")
    if family is None:
        family = enumerate_tuples(n, d, k, j)
    elif (family.n, family.d, family.k, family.j) != (n, d, k, j):
        raise InputError("supplied family does not match encoding parameters")
    meta = EncodingMeta(n, d, r, k, j)
    clauses = encode_distinctness(meta)
    clauses.extend(encode_tuple_clauses(family, meta))
    if fix_first_point_color:
        if r < 2:
            raise InputError("symmetry breaking needs r >= 2 (no variables otherwise)")
        clauses.append((var_index((1,) * d, 1, meta),))
    return CnfFormula(meta.num_vars, tuple(clauses), meta)


def decode_model(assignment: Mapping[int, bool], meta: EncodingMeta) -> Coloring:
    """Read a satisfying assignment back into a coloring: the color of p is the
    unique m with phi_m(p) true, or r if all are false."""
    r = meta.r
    colors = []
    for pm in range(meta.num_points):
        base = pm * (r - 1)
        color = r
        for m in range(1, r):
            try:
                value = assignment[base + m]
            except KeyError:
                raise InputError(f"assignment missing variable {base + m}") from None
            if value:
                if color != r:
                    raise IntegrityError(
                        f"point {point_from_index(pm + 1, meta.n, meta.d)} has two "
                        f"colors ({color} and {m}); distinctness violated"
                    )
                color = m
        colors.append(color)
    return Coloring(meta.n, meta.d, meta.r, tuple(colors))


def coloring_to_assignment(coloring: Coloring, meta: EncodingMeta) -> dict[int, bool]:
    """The assignment phi_m(p) := (coloring(p) == m); inverse of decode_model."""
    if (coloring.n, coloring.d, coloring.r) != (meta.n, meta.d, meta.r):
        raise InputError("coloring does not match encoding parameters")
    out: dict[int, bool] = {}
    for pm, color in enumerate(coloring.colors):
        base = pm * (meta.r - 1)
        for m in range(1, meta.r):
            out[base + m] = color == m
    return out
