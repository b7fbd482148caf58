"""Brute-force oracles and executable property checkers.

The checkers enumerate all 3^n partial assignments of a constraint and
compare what unit propagation on an encoding derives against the
arithmetic ground truth (`extendable`).  They are the machine-checkable
form of the encoding guarantees: consistency (inextensible assignments
force a propagation conflict) and generalized arc-consistency (forced
literals are actually propagated).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .builder import BuildResult, build, level_widths
from .constraints import PBConstraint, evaluate
from .encode import Decomposition
from .propagate import CONFLICT, UnitPropagator
from .robdd import NodeStore

DEFAULT_EXTEND_LIMIT = 14
DEFAULT_ENUM_LIMIT = 8  # 3^8 = 6561 propagation runs per clause set


@dataclass
class Counterexample:
    """A concrete partial assignment violating a checked property."""

    assignment: dict[int, bool]
    variable: int | None = None
    detail: str = ""

    def __str__(self):
        lits = {f"{'' if b else '~'}x{v}" for v, b in sorted(self.assignment.items())}
        where = f" at x{self.variable}" if self.variable else ""
        return f"A={{{', '.join(sorted(lits))}}}{where}: {self.detail}"


def _true_weight(c: PBConstraint, assignment: Mapping[int, bool]) -> int:
    """Sum of coefficients whose literal is true under the (partial) assignment."""
    total = 0
    for coef, lit in c.terms:
        val = assignment.get(abs(lit))
        if val is None:
            continue
        if val == (lit > 0):
            total += coef
    return total


def extendable(
    c: PBConstraint,
    assignment: Mapping[int, bool],
    method: str = "monotone",
    limit: int = DEFAULT_EXTEND_LIMIT,
) -> bool:
    """Can `assignment` be extended to a total assignment satisfying `c`?

    The monotone route sets every unassigned literal false, which is the
    cheapest extension for a normalized constraint; the enumerate route
    tries all 2^k completions.  Both are kept so they can cross-check
    each other.
    """
    if len(c.terms) > limit:
        raise ValueError(f"constraint has {len(c.terms)} variables, limit is {limit}")
    if method == "monotone":
        return _true_weight(c, assignment) <= c.bound
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    free = [v for v in c.variables() if assignment.get(v) is None]
    base = {v: int(b) for v, b in assignment.items() if b is not None}
    for values in product((0, 1), repeat=len(free)):
        full = dict(base)
        full.update(zip(free, values))
        if evaluate(c, full):
            return True
    return False


def _partial_assignments(variables):
    for values in product((None, False, True), repeat=len(variables)):
        yield {v: b for v, b in zip(variables, values) if b is not None}


def _clause_list(cnf):
    return getattr(cnf, "clauses", cnf)


def check_consistency(
    c: PBConstraint,
    cnf,
    mode: str = "conflict",
    root_var: int | None = None,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> Counterexample | None:
    """Inextensible partial assignments must be detected by propagation.

    mode "conflict": propagation from A must conflict exactly when A cannot
    be extended to a model of `c` (encodings that assert their root).
    mode "root": propagation must derive the negation of `root_var` instead
    (consistency-only encodings, no root unit).
    """
    n = len(c.terms)
    if n > limit:
        raise ValueError(f"constraint has {n} variables, enumeration limit is {limit}")
    if mode == "root" and root_var is None:
        raise ValueError("mode='root' needs root_var")
    if mode not in ("conflict", "root"):
        raise ValueError(f"unknown mode {mode!r}")
    variables = c.variables()
    engine = UnitPropagator(_clause_list(cnf), num_vars=max(variables, default=0))
    bound = c.bound
    for a in _partial_assignments(variables):
        seed = [v if b else -v for v, b in a.items()]
        status, values, _, _, _ = engine.run(seed)
        conflict = status == CONFLICT
        root_false = conflict or (root_var is not None and values[root_var] == 2)
        ok = _true_weight(c, a) <= bound  # monotone extendability
        if ok:
            if conflict:
                return Counterexample(a, None, "spurious conflict on extendable assignment")
            if mode == "root" and root_false:
                return Counterexample(a, None, "root negated on extendable assignment")
        else:
            detected = conflict if mode == "conflict" else root_false
            if not detected:
                return Counterexample(a, None, "inextensible assignment not detected")
    return None


def check_gac(
    c: PBConstraint,
    cnf,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> Counterexample | None:
    """Every forced literal must be derived by propagation.

    For each extendable partial assignment A and unassigned variable whose
    literal cannot be set true, propagation from A has to produce the
    literal's negation.  Returns the first violation in enumeration order,
    which makes reported witnesses deterministic.
    """
    n = len(c.terms)
    if n > limit:
        raise ValueError(f"constraint has {n} variables, enumeration limit is {limit}")
    variables = c.variables()
    engine = UnitPropagator(_clause_list(cnf), num_vars=max(variables, default=0))
    bound = c.bound
    for a in _partial_assignments(variables):
        base = _true_weight(c, a)
        if base > bound:
            continue  # not extendable; consistency's business
        forced = [
            -lit for coef, lit in c.terms
            if abs(lit) not in a and base + coef > bound
        ]
        if not forced:
            continue
        seed = [v if b else -v for v, b in a.items()]
        status, values, _, _, _ = engine.run(seed)
        if status == CONFLICT:
            return Counterexample(a, None, "spurious conflict on extendable assignment")
        for lit in forced:
            if values[abs(lit)] != (1 if lit > 0 else 2):
                return Counterexample(
                    a, abs(lit), f"literal {lit} is forced but was not propagated"
                )
    return None


def check_equivalent(c1: PBConstraint, c2: PBConstraint) -> bool:
    """Do two constraints represent the same Boolean function?

    Builds both diagrams in one shared store with the same level/literal
    layout; canonicity makes function equality the same as root equality.
    Requires identical literal sequences (same variables, order and
    polarities), otherwise the structural comparison would be meaningless.
    """
    if c1.literals() != c2.literals():
        raise ValueError(
            f"literal sequences differ: {c1.literals()} vs {c2.literals()}"
        )
    store = NodeStore()
    r1 = build(c1, store=store)
    r2 = build(c2, store=store)
    return r1.root == r2.root


def subset_sum_reachable(coefficients, k: int) -> bool:
    """Dynamic-programming oracle: can a subset of `coefficients` sum to `k`?"""
    if k < 0:
        return False
    mask = (1 << (k + 1)) - 1
    reachable = 1
    for a in coefficients:
        reachable |= (reachable << a) & mask
    return bool(reachable >> k & 1)


def subset_sum_unsat(coefficients, k: int) -> bool:
    """Diagram-equality certificate that no subset sums to exactly `k`.

    The sum k is unreachable iff `sum <= k` and `sum <= k-1` are the same
    Boolean function, i.e. iff their canonical diagrams coincide.
    """
    pairs = [(a, i) for i, a in enumerate(coefficients, 1)]
    le_k = PBConstraint.from_pairs(pairs, k)
    le_k1 = PBConstraint.from_pairs(pairs, k - 1)
    return check_equivalent(le_k, le_k1)


def check_level_width(
    decomposition: Decomposition,
    result: BuildResult,
) -> Counterexample | None:
    """Width bound for power-of-two diagrams: each level stays below n + r.

    `n` is the original variable count and `r` the 1-based original position
    the level's bit belongs to.  Applies to diagrams built from a
    coefficient decomposition (every level coefficient is a power of two).
    """
    coefs = result.coefs
    for a in coefs:
        if a & (a - 1):
            raise ValueError(f"coefficient {a} is not a power of two")
    n = len(decomposition.original.terms)
    widths = level_widths(result)
    for level, (power, pos) in enumerate(decomposition.bit_tags, 1):
        t = widths[level - 1]
        if not t < n + pos:
            return Counterexample(
                {}, None,
                f"level {level} (power {power}, position {pos}) has {t} nodes, "
                f"bound is {n + pos - 1}",
            )
    return None
