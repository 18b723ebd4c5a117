"""Shared test oracles, all deliberately independent of the code under test:
rank via sympy's rational elimination, determinants via the Leibniz sum,
tuple families via unpruned exhaustive enumeration, and SAT via truth tables.
"""

from __future__ import annotations

import itertools
import sys

import pytest
import sympy

from schurlat.lattice import SchurTuple


def oracle_rank(vectors) -> int:
    if not vectors:
        return 0
    return sympy.Matrix([list(v) for v in vectors]).rank()


def oracle_det(matrix) -> int:
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        term = 1
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += (-1) ** inversions * term
    return total


def oracle_subset_independent(summands, j) -> bool:
    """j-nondegeneracy by brute force over all j-element subsets."""
    return any(
        oracle_rank(subset) == j for subset in itertools.combinations(summands, j)
    )


def oracle_tuple_family(n, d, k, j):
    """Unpruned enumeration of canonical (summands, total) pairs."""
    pts = list(itertools.product(range(1, n + 1), repeat=d))
    out = []
    for summands in itertools.combinations_with_replacement(pts, k - 1):
        total = tuple(map(sum, zip(*summands)))
        if any(c > n for c in total):
            continue
        if oracle_rank(summands) >= j:
            out.append((summands, total))
    out.sort(key=lambda pair: (pair[1], pair[0]))
    return out


def oracle_truth_table_sat(num_vars, clauses):
    """Exhaustive SAT check; returns a model dict or None. Keep num_vars small."""
    pos_neg = []
    for clause in clauses:
        pos = 0
        neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << (lit - 1)
            else:
                neg |= 1 << (-lit - 1)
        pos_neg.append((pos, neg))
    full = (1 << num_vars) - 1
    for m in range(1 << num_vars):
        if all(m & pos or (~m & full) & neg for pos, neg in pos_neg):
            return {v: bool(m >> (v - 1) & 1) for v in range(1, num_vars + 1)}
    return None


def as_tuples(family):
    return [(t.summands, t.total) for t in family.tuples]


def make_tuple(summands, total) -> SchurTuple:
    return SchurTuple(tuple(sorted(summands)), tuple(total))


@pytest.fixture
def internal_solver_cmd() -> list[str]:
    """The bundled DIMACS solver, invoked portably via the interpreter."""
    return [sys.executable, "-m", "schurlat.solver_cli"]
