"""Satisfiability layer: embedded solving, DIMACS exchange, external solvers.

Every satisfying assignment that leaves this module — whether produced by the
embedded engine or parsed from an external solver — has been checked against
the formula by an independent clause evaluator first.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Mapping, Sequence

from . import cdcl
from .encoder import CnfFormula
from .errors import InputError, IntegrityError, ParseError

INTERNAL_SOLVER_NAME = "schurlat-cdcl"


@dataclass(frozen=True)
class Budget:
    """Optional wall-clock / conflict limits for a single solve call."""

    seconds: float | None = None
    conflicts: int | None = None

    def __post_init__(self) -> None:
        if self.seconds is not None and self.seconds <= 0:
            raise InputError("budget seconds must be positive")
        if self.conflicts is not None and self.conflicts <= 0:
            raise InputError("budget conflicts must be positive")


@dataclass(frozen=True)
class Sat:
    """Satisfiable, with a total assignment variable -> boolean."""

    model: dict[int, bool]


@dataclass(frozen=True)
class Unsat:
    """No satisfying assignment exists."""


@dataclass(frozen=True)
class Unknown:
    """No answer within budget, or the solver failed; reason is human-readable."""

    reason: str


SolveResult = Sat | Unsat | Unknown


def check_model(formula: CnfFormula, model: Mapping[int, bool]) -> bool:
    """Independent clause evaluator: true iff the model satisfies every clause.
    Variables absent from the model count as false."""
    for clause in formula.clauses:
        for lit in clause:
            value = model.get(abs(lit), False)
            if value == (lit > 0):
                break
        else:
            return False
    return True


def solve_internal(
    formula: CnfFormula,
    budget: Budget | None = None,
    *,
    heuristic: str = "vsids",
    seed: int | None = None,
    phase_hints: Mapping[int, bool] | None = None,
) -> SolveResult:
    """Decide a formula with the embedded CDCL engine.

    Sound and complete within budget; deterministic for fixed keyword options.
    phase_hints biases initial decision polarity per variable (a warm start);
    it never affects which answer is returned, only how fast.
    """
    engine = cdcl.Engine(
        formula.num_vars,
        formula.clauses,
        heuristic=heuristic,
        seed=seed,
        phase_hints=phase_hints,
    )
    status, raw = engine.solve(
        max_seconds=budget.seconds if budget else None,
        max_conflicts=budget.conflicts if budget else None,
    )
    if status == "unsat":
        return Unsat()
    if status == "unknown":
        parts = []
        if budget and budget.seconds is not None:
            parts.append(f"{budget.seconds:g}s")
        if budget and budget.conflicts is not None:
            parts.append(f"{budget.conflicts} conflicts")
        return Unknown(f"internal solver budget exhausted ({', '.join(parts)})")
    assert raw is not None
    model = {v: raw[v] for v in range(1, formula.num_vars + 1)}
    if not check_model(formula, model):
        raise IntegrityError("internal solver returned a model that fails the formula")
    return Sat(model)


# -- DIMACS ------------------------------------------------------------------

def write_dimacs(
    formula: CnfFormula, sink: BinaryIO | None = None, *, comments: bool = True
) -> bytes:
    """Serialize to DIMACS CNF, byte-exact and stable across runs.

    Header "p cnf <vars> <clauses>", one clause per line terminated by " 0".
    When the formula carries encoding metadata and comments are enabled, a
    single leading "c" line records the (N, d, k, j, r) parameters.
    """
    lines: list[str] = []
    meta = formula.meta
    if comments and meta is not None:
        fields = [f"N={meta.n}", f"d={meta.d}"]
        if meta.k is not None:
            fields.append(f"k={meta.k}")
        if meta.j is not None:
            fields.append(f"j={meta.j}")
        fields.append(f"r={meta.r}")
        lines.append("c schurlat " + " ".join(fields) + "\n")
    lines.append(f"p cnf {formula.num_vars} {formula.num_clauses}\n")
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause) + (" 0\n" if clause else "0\n"))
    data = "".join(lines).encode("ascii")
    if sink is not None:
        sink.write(data)
    return data


def read_dimacs(text: str | bytes) -> CnfFormula:
    """Parse DIMACS CNF text. Comment lines are ignored; clauses may span lines."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    num_vars: int | None = None
    num_clauses: int | None = None
    tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad DIMACS header: {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad DIMACS header: {line!r}") from None
            continue
        if line == "%":
            break
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError:
            raise ParseError(f"bad DIMACS clause line: {line!r}") from None
    if num_vars is None or num_clauses is None:
        raise ParseError("missing DIMACS 'p cnf' header")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(current))
            current.clear()
        else:
            current.append(t)
    if current:
        raise ParseError("last clause is not 0-terminated")
    if len(clauses) != num_clauses:
        raise ParseError(f"header promises {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


# -- external solvers ----------------------------------------------------------

def parse_solver_output(text: str, num_vars: int | None = None) -> SolveResult:
    """Interpret the stdout of a DIMACS-conformant solver.

    "s SATISFIABLE" plus "v" literal lines yields Sat (variables absent from
    the v-lines default to false); "s UNSATISFIABLE" yields Unsat; anything
    else is Unknown with a reason. Contradictory v-lines are a parse error.
    """
    status: str | None = None
    lits: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v ") or line == "v":
            try:
                lits.extend(int(t) for t in line[1:].split())
            except ValueError:
                raise ParseError(f"bad v-line: {line!r}") from None
    if status is None:
        return Unknown("no status line")
    if status == "UNSATISFIABLE":
        return Unsat()
    if status != "SATISFIABLE":
        return Unknown(f"solver reported {status!r}")
    model: dict[int, bool] = {}
    for lit in lits:
        if lit == 0:
            continue
        v = abs(lit)
        value = lit > 0
        if v in model and model[v] != value:
            raise ParseError(f"contradictory v-lines for variable {v}")
        model[v] = value
    if num_vars is not None:
        for v in range(1, num_vars + 1):
            model.setdefault(v, False)
    return Sat(model)


def solve_external(
    formula: CnfFormula,
    command: str | Sequence[str],
    budget: Budget | None = None,
) -> SolveResult:
    """Decide a formula by invoking `<command> <cnf-path>` on a temp DIMACS file.

    Sat models are re-checked against the formula in-process before being
    returned; a model that fails the formula is an integrity error, never a
    silent wrong answer. Spawn failures and timeouts come back as Unknown.
    """
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    if not argv:
        raise InputError("empty external solver command")
    timeout = budget.seconds if budget and budget.seconds is not None else None
    with tempfile.TemporaryDirectory(prefix="schurlat-") as tmp:
        path = Path(tmp) / "formula.cnf"
        path.write_bytes(write_dimacs(formula))
        try:
            proc = subprocess.run(
                argv + [str(path)],
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except subprocess.TimeoutExpired:
            return Unknown(f"external solver timed out after {timeout:g}s")
        except OSError as e:
            return Unknown(f"failed to launch external solver: {e}")
    result = parse_solver_output(proc.stdout, num_vars=formula.num_vars)
    if isinstance(result, Sat) and not check_model(formula, result.model):
        raise IntegrityError(
            f"external solver {argv[0]!r} returned a model that fails the formula"
        )
    return result


def solve(
    formula: CnfFormula,
    budget: Budget | None = None,
    *,
    command: str | Sequence[str] | None = None,
    **internal_options,
) -> SolveResult:
    """Dispatch to solve_external when a command is given, else solve_internal."""
    if command is not None:
        return solve_external(formula, command, budget)
    return solve_internal(formula, budget, **internal_options)
