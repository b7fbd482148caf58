"""Generators for analytic constraint families and seeded random corpora."""

from __future__ import annotations

import random

from .constraints import PBConstraint, Term


def cardinality(n: int, k: int) -> PBConstraint:
    """x1 + ... + xn <= k."""
    return PBConstraint(tuple(Term(1, v) for v in range(1, n + 1)), k)


def bailleux_family(a: int, b: int, n: int) -> PBConstraint:
    """Coefficients a + b^i with bound a*n/2; n must be even.

    Despite the huge coefficients this is just a disguised cardinality
    constraint (<= n/2 - 1) as long as sum(b^i) < a, so its canonical
    diagram stays quadratic.
    """
    if n < 1 or n % 2:
        raise ValueError("n must be a positive even integer")
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if sum(b**i for i in range(1, n + 1)) >= a:
        raise ValueError("requires sum(b^i, i=1..n) < a")
    terms = tuple(Term(a + b**i, i) for i in range(1, n + 1))
    return PBConstraint(terms, a * n // 2)


def hosaka_family(n: int) -> PBConstraint:
    """4n^2-variable constraint whose diagram needs at least 2^n nodes.

    Grid coefficients 2^(j-1) + 2^(2n+i-1) for i, j in 1..2n, bound
    (2^(4n) - 1) * n, variables in row-major order.  Construction cost
    grows exponentially by design; keep n small or pass a node budget.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    side = 2 * n
    terms = []
    for i in range(1, side + 1):
        for j in range(1, side + 1):
            var = (i - 1) * side + j
            terms.append(Term((1 << (j - 1)) + (1 << (2 * n + i - 1)), var))
    return PBConstraint(tuple(terms), ((1 << (4 * n)) - 1) * n)


def random_constraint(
    seed: int,
    n: int,
    max_coeff: int,
    bound_policy="uniform",
) -> PBConstraint:
    """Deterministic random constraint over variables 1..n.

    Coefficients are uniform in [1, max_coeff].  `bound_policy` is
    "uniform" (bound uniform in [0, sum]), "full" (bound = sum), or a
    float fraction of the coefficient sum.
    """
    if n < 1 or max_coeff < 1:
        raise ValueError("need n >= 1 and max_coeff >= 1")
    rng = random.Random(seed)
    coefs = [rng.randint(1, max_coeff) for _ in range(n)]
    total = sum(coefs)
    if bound_policy == "uniform":
        bound = rng.randint(0, total)
    elif bound_policy == "full":
        bound = total
    elif isinstance(bound_policy, float):
        bound = int(bound_policy * total)
    else:
        raise ValueError(f"unknown bound policy {bound_policy!r}")
    return PBConstraint(tuple(Term(a, v) for v, a in enumerate(coefs, 1)), bound)
