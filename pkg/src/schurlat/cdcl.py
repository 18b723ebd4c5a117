"""Conflict-driven clause-learning engine.

This is the embedded decision procedure behind sat.solve_internal: two watched
literals per clause, first-UIP clause learning with recursive minimization,
VSIDS decision scores with deterministic index tie-breaking, saved phases,
Luby restarts, and LBD-based deletion of learned clauses.

Everything is deterministic for a fixed (heuristic, seed, phase hints) triple:
ties in the decision heap break on variable index, restarts follow the Luby
sequence, and wall-clock budgets can only turn a would-be answer into
"unknown", never change it.

Literal coding: variable v (1-based) maps to literal codes 2v (positive) and
2v+1 (negative); code^1 negates.
"""

from __future__ import annotations

import heapq
import random
import time
from typing import Iterable, Mapping, Sequence

_UNDEF = 0
_TRUE = 1
_FALSE = 2


class _Clause:
    __slots__ = ("lits", "learnt", "lbd", "deleted")

    def __init__(self, lits: list[int], learnt: bool, lbd: int = 0) -> None:
        self.lits = lits
        self.learnt = learnt
        self.lbd = lbd
        self.deleted = False


def _luby(i: int) -> int:
    """i-th term (1-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    while True:
        k = 1
        while (1 << k) - 1 < i:
            k += 1
        if (1 << k) - 1 == i:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


class Engine:
    """One-shot CDCL solver over integer-coded clauses."""

    def __init__(
        self,
        num_vars: int,
        clauses: Iterable[Sequence[int]],
        *,
        heuristic: str = "vsids",
        seed: int | None = None,
        phase_hints: Mapping[int, bool] | None = None,
    ) -> None:
        if heuristic not in ("vsids", "fixed"):
            raise ValueError(f"unknown heuristic {heuristic!r}")
        self.n = num_vars
        self.heuristic = heuristic
        self.rng = random.Random(seed) if seed is not None else None
        nlits = 2 * num_vars + 2
        self.val = bytearray(nlits)
        self.watches: list[list[_Clause]] = [[] for _ in range(nlits)]
        self.level = [0] * (num_vars + 1)
        self.reason: list[_Clause | None] = [None] * (num_vars + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.activity = [0.0] * (num_vars + 1)
        self.var_inc = 1.0
        self.heap: list[tuple[float, int]] = []
        self.phase = bytearray(num_vars + 1)  # 1 -> decide positive first
        if phase_hints:
            for v, positive in phase_hints.items():
                if 1 <= v <= num_vars and positive:
                    self.phase[v] = 1
        self.clauses: list[_Clause] = []
        self.learnts: list[_Clause] = []
        self.ok = True
        self.conflicts = 0
        self._seen = bytearray(num_vars + 1)
        self._fixed_cursor = 1

        units: list[int] = []
        dedup: set[tuple[int, ...]] = set()
        for signed in clauses:
            lits = sorted({2 * l if l > 0 else -2 * l + 1 for l in signed})
            if any(lits[i] ^ 1 == lits[i + 1] for i in range(len(lits) - 1)):
                continue  # tautology
            key = tuple(lits)
            if key in dedup:
                continue
            dedup.add(key)
            if not lits:
                self.ok = False
                return
            if len(lits) == 1:
                units.append(lits[0])
            else:
                c = _Clause(lits, learnt=False)
                self.clauses.append(c)
                self.watches[lits[0]].append(c)
                self.watches[lits[1]].append(c)
        for lit in units:
            if self.val[lit] == _FALSE:
                self.ok = False
                return
            if self.val[lit] == _UNDEF:
                self._enqueue(lit, None)

    # -- assignment primitives -------------------------------------------

    def _enqueue(self, lit: int, reason: _Clause | None) -> None:
        self.val[lit] = _TRUE
        self.val[lit ^ 1] = _FALSE
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _backtrack(self, target_level: int) -> None:
        if len(self.trail_lim) <= target_level:
            return
        limit = self.trail_lim[target_level]
        heap = self.heap
        activity = self.activity
        vsids = self.heuristic == "vsids"
        for i in range(len(self.trail) - 1, limit - 1, -1):
            lit = self.trail[i]
            v = lit >> 1
            self.phase[v] = 1 - (lit & 1)
            self.val[lit] = _UNDEF
            self.val[lit ^ 1] = _UNDEF
            self.reason[v] = None
            if vsids:
                heapq.heappush(heap, (-activity[v], v))
        del self.trail[limit:]
        del self.trail_lim[target_level:]
        self.qhead = len(self.trail)
        self._fixed_cursor = 1

    # -- propagation -------------------------------------------------------

    def _propagate(self) -> _Clause | None:
        val = self.val
        watches = self.watches
        trail = self.trail
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            flit = lit ^ 1
            ws = watches[flit]
            i = 0
            j = 0
            nws = len(ws)
            while i < nws:
                c = ws[i]
                i += 1
                if c.deleted:
                    continue
                lits = c.lits
                if lits[0] == flit:
                    lits[0] = lits[1]
                    lits[1] = flit
                first = lits[0]
                if val[first] == _TRUE:
                    ws[j] = c
                    j += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    if val[lk] != _FALSE:
                        lits[1] = lk
                        lits[k] = flit
                        watches[lk].append(c)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = c
                j += 1
                if val[first] == _FALSE:
                    while i < nws:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    return c
                self._enqueue(first, c)
            del ws[j:]
        return None

    # -- conflict analysis ---------------------------------------------------

    def _bump(self, v: int) -> None:
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if self.heuristic != "vsids":
            return
        if act > 1e100:
            scale = 1e-100
            for u in range(1, self.n + 1):
                self.activity[u] *= scale
            self.var_inc *= scale
            self._rebuild_heap()
        else:
            heapq.heappush(self.heap, (-act, v))

    def _rebuild_heap(self) -> None:
        self.heap = [
            (-self.activity[v], v)
            for v in range(1, self.n + 1)
            if self.val[2 * v] == _UNDEF
        ]
        heapq.heapify(self.heap)

    def _analyze(self, confl: _Clause) -> tuple[list[int], int, int]:
        """First-UIP learning. Returns (learnt clause, backjump level, lbd);
        the asserting literal sits at learnt[0]."""
        seen = self._seen
        level = self.level
        reason = self.reason
        trail = self.trail
        current = len(self.trail_lim)
        learnt: list[int] = [0]
        counter = 0
        p = -1  # trail literal being resolved; -1 on the first pass
        index = len(trail) - 1
        while True:
            for q in confl.lits:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    self._bump(v)
                    if level[v] == current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[trail[index] >> 1]:
                index -= 1
            p = trail[index]
            v = p >> 1
            seen[v] = 0
            counter -= 1
            index -= 1
            if counter == 0:
                break
            confl = reason[v]  # type: ignore[assignment]
        learnt[0] = p ^ 1

        marked: list[int] = []
        kept = [learnt[0]]
        for q in learnt[1:]:
            if reason[q >> 1] is None or not self._redundant(q, marked):
                kept.append(q)
        for q in learnt[1:]:
            seen[q >> 1] = 0
        for v in marked:
            seen[v] = 0
        learnt = kept

        lbd = len({level[q >> 1] for q in learnt})
        if len(learnt) == 1:
            bj = 0
        else:
            mi = max(range(1, len(learnt)), key=lambda i: level[learnt[i] >> 1])
            learnt[1], learnt[mi] = learnt[mi], learnt[1]
            bj = level[learnt[1] >> 1]
        return learnt, bj, lbd

    def _redundant(self, lit: int, marked: list[int]) -> bool:
        """True if lit is implied by the rest of the learnt clause, i.e. its
        reason chain never escapes the seen set. Marks stay for memoization;
        the caller clears everything recorded in `marked`."""
        reason = self.reason
        level = self.level
        seen = self._seen
        stack = [lit]
        added_from = len(marked)
        while stack:
            r = reason[stack.pop() >> 1]
            if r is None:
                for v in marked[added_from:]:
                    seen[v] = 0
                del marked[added_from:]
                return False
            for q in r.lits:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    if reason[v] is None:
                        for u in marked[added_from:]:
                            seen[u] = 0
                        del marked[added_from:]
                        return False
                    seen[v] = 1
                    marked.append(v)
                    stack.append(q)
        return True

    # -- learned clause management ---------------------------------------------

    def _reduce_db(self) -> None:
        reason = self.reason

        def locked(c: _Clause) -> bool:
            lits = c.lits
            return reason[lits[0] >> 1] is c or (
                len(lits) > 1 and reason[lits[1] >> 1] is c
            )

        keep: list[_Clause] = []
        drop: list[_Clause] = []
        for c in self.learnts:
            if c.lbd <= 2 or len(c.lits) <= 2 or locked(c):
                keep.append(c)
            else:
                drop.append(c)
        drop.sort(key=lambda c: (c.lbd, len(c.lits)))
        half = len(drop) // 2
        keep.extend(drop[:half])
        for c in drop[half:]:
            c.deleted = True
        self.learnts = keep

    # -- decisions ----------------------------------------------------------------

    def _decide(self) -> int:
        """Next decision literal, or 0 when every variable is assigned."""
        val = self.val
        if self.heuristic == "fixed":
            v = self._fixed_cursor
            while v <= self.n and val[2 * v] != _UNDEF:
                v += 1
            self._fixed_cursor = v
            if v > self.n:
                return 0
        else:
            heap = self.heap
            activity = self.activity
            v = 0
            while heap:
                negact, u = heapq.heappop(heap)
                if val[2 * u] == _UNDEF and -negact == activity[u]:
                    v = u
                    break
            if not v:
                self._rebuild_heap()
                if not self.heap:
                    return 0
                _, v = heapq.heappop(self.heap)
        return 2 * v + (0 if self.phase[v] else 1)

    # -- main loop --------------------------------------------------------------------

    def solve(
        self,
        *,
        max_seconds: float | None = None,
        max_conflicts: int | None = None,
    ) -> tuple[str, list[bool] | None]:
        """Run the search to an answer or a budget. Returns ("sat", model) with
        model indexed by variable, ("unsat", None), or ("unknown", None)."""
        if not self.ok:
            return "unsat", None
        if self._propagate() is not None:
            return "unsat", None
        if self.heuristic == "vsids":
            self._rebuild_heap()

        deadline = time.monotonic() + max_seconds if max_seconds is not None else None
        restart_count = 0
        restart_limit = 100 * _luby(1)
        conflicts_at_restart = 0
        max_learnts = max(4000, 2 * len(self.clauses) // 3)
        decisions = 0

        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                if not self.trail_lim:
                    return "unsat", None
                learnt, bj, lbd = self._analyze(confl)
                self._backtrack(bj)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    c = _Clause(learnt, learnt=True, lbd=lbd)
                    self.learnts.append(c)
                    self.watches[learnt[0]].append(c)
                    self.watches[learnt[1]].append(c)
                    self._enqueue(learnt[0], c)
                self.var_inc /= 0.95
                if max_conflicts is not None and self.conflicts >= max_conflicts:
                    return "unknown", None
                if deadline is not None and self.conflicts % 256 == 0:
                    if time.monotonic() > deadline:
                        return "unknown", None
                continue

            if self.conflicts - conflicts_at_restart >= restart_limit:
                restart_count += 1
                restart_limit = 100 * _luby(restart_count + 1)
                conflicts_at_restart = self.conflicts
                if self.rng is not None and self.rng.random() < 0.02:
                    v = self.rng.randint(1, self.n)
                    self.phase[v] ^= 1
                self._backtrack(0)

            if len(self.learnts) >= max_learnts:
                self._reduce_db()
                max_learnts += 512

            decisions += 1
            if deadline is not None and decisions & 1023 == 0:
                if time.monotonic() > deadline:
                    return "unknown", None
            lit = self._decide()
            if lit == 0:
                model = [False] * (self.n + 1)
                for v in range(1, self.n + 1):
                    model[v] = self.val[2 * v] == _TRUE
                return "sat", model
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)
