"""
Brute-force ground truth.

Everything here works directly from right rotations and exhaustive scans,
sharing nothing with the sequent machinery beyond the formula data type.
Deliberately slow; meant for small sizes.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Callable, Sequence

from .lattice import HasseGraph
from .term import Atom, Formula, Product, canonical_frontier, frontier, right_rotations, shape

DEFAULT_LIMIT = 6


class LatticeViolation(AssertionError):
    """Raised when a pair of trees has no unique join or meet (never expected)."""


class LimitExceeded(ValueError):
    pass


def rotations(A: Formula) -> list:
    """Every formula reachable from ``A`` by one right rotation."""
    return right_rotations(A)


@lru_cache(maxsize=None)
def _up_set(s: Formula) -> frozenset:
    seen = {s}
    queue = deque([s])
    while queue:
        for B in right_rotations(queue.popleft()):
            if B not in seen:
                seen.add(B)
                queue.append(B)
    return frozenset(seen)


@lru_cache(maxsize=None)
def _key(A: Formula) -> tuple:
    return frontier(A), shape(A)


def leq_oracle(A: Formula, B: Formula) -> bool:
    """Is ``B`` reachable from ``A`` by right rotations?"""
    (fa, sa), (fb, sb) = _key(A), _key(B)
    if fa != fb:
        return False
    # rotations never look at atom names, so reachability is decided on shapes
    return sb in _up_set(sa)


def all_trees(omega: Sequence[Atom]) -> list:
    """Every bracketing of ``omega``, generated by brute-force splitting."""
    omega = tuple(omega)
    if len(omega) == 1:
        return [omega[0]]
    out = []
    for i in range(1, len(omega)):
        for l in all_trees(omega[:i]):
            for r in all_trees(omega[i:]):
                out.append(Product(l, r))
    return out


def _unique_extremum(candidates: list, below: Callable, what: str, A, B) -> Formula:
    extremal = [C for C in candidates if not any(D != C and below(D, C) for D in candidates)]
    if len(extremal) != 1:
        raise LatticeViolation(f"{len(extremal)} candidate {what}s for {A} and {B}")
    return extremal[0]


def join_oracle(A: Formula, B: Formula) -> Formula:
    if frontier(A) != frontier(B):
        raise ValueError("join of formulas with different frontiers")
    ups = [C for C in all_trees(frontier(A)) if leq_oracle(A, C) and leq_oracle(B, C)]
    return _unique_extremum(ups, leq_oracle, "join", A, B)


def meet_oracle(A: Formula, B: Formula) -> Formula:
    if frontier(A) != frontier(B):
        raise ValueError("meet of formulas with different frontiers")
    downs = [C for C in all_trees(frontier(A)) if leq_oracle(C, A) and leq_oracle(C, B)]
    return _unique_extremum(downs, lambda x, y: leq_oracle(y, x), "meet", A, B)


def count_intervals_oracle(n: int, limit: int = DEFAULT_LIMIT) -> int:
    """Number of pairs ``A <= B`` among trees with ``n`` products."""
    if n > limit:
        raise LimitExceeded(f"size {n} exceeds the oracle limit {limit}")
    trees = all_trees(canonical_frontier(n))
    return sum(1 for A in trees for B in trees if leq_oracle(A, B))


def transitive_reduction(nodes: Sequence, leq: Callable) -> HasseGraph:
    """Covering pairs of the partial order ``leq`` restricted to ``nodes``."""
    nodes = tuple(nodes)
    n = len(nodes)
    strictly_above = [
        {j for j in range(n) if j != i and leq(nodes[i], nodes[j])} for i in range(n)
    ]
    edges = []
    for i in range(n):
        for j in sorted(strictly_above[i]):
            if not any(j in strictly_above[k] for k in strictly_above[i]):
                edges.append((i, j))
    return HasseGraph(nodes, tuple(edges))
