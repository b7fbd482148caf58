"""Deterministic unit-propagation fixpoint engine.

Counter-based rather than watched-literal: the engine exists to *define*
what the consistency and arc-consistency checkers mean by propagation, so
clarity and reproducibility beat solver tricks.  A `UnitPropagator` is
built once per clause set and can run many seeds cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

FIXPOINT = "fixpoint"
CONFLICT = "conflict"


@dataclass
class Assignment:
    """Partial assignment plus the trail of how each literal got set.

    `trail` holds `(literal, antecedent clause index)` pairs; seeds have
    antecedent None.
    """

    values: dict[int, bool] = field(default_factory=dict)
    trail: list[tuple[int, int | None]] = field(default_factory=list)

    def lit_value(self, lit: int) -> bool | None:
        v = self.values.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def assign(self, lit: int, reason: int | None = None) -> None:
        var = abs(lit)
        assert self.values.get(var) is None, f"x{var} assigned twice"
        self.values[var] = lit > 0
        self.trail.append((lit, reason))

    def literals(self) -> list[int]:
        return [l for l, _ in self.trail]


@dataclass
class PropagationResult:
    assignment: Assignment
    status: str  # FIXPOINT or CONFLICT
    conflict_clause: int | None = None


def _seed_literals(seed) -> list[int]:
    if isinstance(seed, Assignment):
        return seed.literals()
    if isinstance(seed, Mapping):
        return [v if b else -v for v, b in seed.items()]
    return list(seed)


class UnitPropagator:
    """Reusable propagation engine over one immutable clause list."""

    def __init__(self, clauses: Sequence[Sequence[int]], num_vars: int | None = None):
        self.clauses = [tuple(dict.fromkeys(cl)) for cl in clauses]
        nv = num_vars or 0
        for cl in self.clauses:
            for l in cl:
                if abs(l) > nv:
                    nv = abs(l)
        self.num_vars = nv
        self._pos: list[list[int]] = [[] for _ in range(nv + 1)]
        self._neg: list[list[int]] = [[] for _ in range(nv + 1)]
        self._sizes = [len(cl) for cl in self.clauses]
        self._empty_clause: int | None = None
        self._initial_units: list[tuple[int, int]] = []
        for ci, cl in enumerate(self.clauses):
            if not cl:
                self._empty_clause = ci
            elif len(cl) == 1:
                self._initial_units.append((cl[0], ci))
            for l in cl:
                (self._pos if l > 0 else self._neg)[abs(l)].append(ci)
        self._zero_counts = [0] * len(self.clauses)

    def run(self, seed: Iterable[int]):
        """Propagate to fixpoint from `seed` literals.

        Returns `(status, values, trail, reasons, conflict_clause)` where
        `values[v]` is 0 unassigned / 1 true / 2 false.  Contradictory
        seeds raise ValueError; the fixpoint itself is unique regardless
        of processing order.
        """
        values = bytearray(self.num_vars + 1)
        trail: list[int] = []
        reasons: list[int | None] = []
        if self._empty_clause is not None:
            return CONFLICT, values, trail, reasons, self._empty_clause

        def assign(lit: int, reason: int | None) -> bool:
            var = abs(lit)
            want = 1 if lit > 0 else 2
            have = values[var]
            if have == want:
                return True
            if have:
                return False
            values[var] = want
            trail.append(lit)
            reasons.append(reason)
            return True

        for lit in _seed_literals(seed):
            if not assign(lit, None):
                raise ValueError(f"contradictory seed literal {lit}")
        for lit, ci in self._initial_units:
            if not assign(lit, ci):
                return CONFLICT, values, trail, reasons, ci

        clauses = self.clauses
        sizes = self._sizes
        nfalse = self._zero_counts[:]
        pos, neg = self._pos, self._neg
        head = 0
        while head < len(trail):
            lit = trail[head]
            head += 1
            var = abs(lit)
            for ci in (neg[var] if lit > 0 else pos[var]):
                nf = nfalse[ci] + 1
                nfalse[ci] = nf
                size = sizes[ci]
                if nf == size:
                    return CONFLICT, values, trail, reasons, ci
                if nf == size - 1:
                    unit = 0
                    for l in clauses[ci]:
                        have = values[abs(l)]
                        if have == 0:
                            unit = l
                            break
                        if have == (1 if l > 0 else 2):
                            unit = 0
                            break
                    if unit:
                        values[abs(unit)] = 1 if unit > 0 else 2
                        trail.append(unit)
                        reasons.append(ci)
        return FIXPOINT, values, trail, reasons, None

    def lit_true(self, values: bytearray, lit: int) -> bool:
        return values[abs(lit)] == (1 if lit > 0 else 2)


def unit_propagate(clauses, seed=()) -> PropagationResult:
    """One-shot propagation returning a full Assignment with trail.

    `clauses` may be a ClauseSet or any sequence of literal sequences;
    `seed` an Assignment, a var->bool mapping, or an iterable of literals.
    """
    cl = getattr(clauses, "clauses", clauses)
    seed_lits = _seed_literals(seed)
    nv = max((abs(l) for l in seed_lits), default=0)
    engine = UnitPropagator(cl, num_vars=nv)
    status, values, trail, reasons, conflict = engine.run(seed_lits)
    assignment = Assignment()
    for lit, reason in zip(trail, reasons):
        assignment.assign(lit, reason)
    return PropagationResult(assignment, status, conflict)
