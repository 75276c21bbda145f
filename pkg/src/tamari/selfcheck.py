"""Oracle-equivalence suites, shared by the ``selfcheck`` command."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import oracle
from .count import dp_tables, tutte_formula
from .focusing import count_focused, decide, search_focused
from .calculus import Sequent, is_focused
from .lattice import enumerate_trees, hasse, join_formula, meet_formula
from .term import canonical_frontier


@dataclass
class CheckResult:
    name: str
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name} ({self.checked} cases)"
        if self.failures:
            line += f": first failure {self.failures[0]}"
        return line


def _pairs(n: int):
    trees = enumerate_trees(canonical_frontier(n))
    for A in trees:
        for B in trees:
            yield A, B


def check_decide(max_size: int) -> CheckResult:
    res = CheckResult("decide agrees with rotation reachability", 0, [])
    for n in range(max_size + 1):
        for A, B in _pairs(n):
            res.checked += 1
            if decide(A, B) != oracle.leq_oracle(A, B):
                res.failures.append((str(A), str(B)))
    return res


def check_coherence(max_size: int) -> CheckResult:
    res = CheckResult("exactly one focused derivation per interval", 0, [])
    for n in range(max_size + 1):
        for A, B in _pairs(n):
            res.checked += 1
            c = count_focused(Sequent((A,), B))
            expected = 1 if oracle.leq_oracle(A, B) else 0
            D = search_focused((A,), B)
            found = 0 if D is None else int(is_focused(D) and D.conclusion == Sequent((A,), B))
            if c != expected or found != expected:
                res.failures.append((str(A), str(B), c))
    return res


def check_lattice(max_size: int) -> CheckResult:
    res = CheckResult("join and meet agree with exhaustive search", 0, [])
    for n in range(max_size + 1):
        for A, B in _pairs(n):
            res.checked += 1
            if join_formula(A, B) != oracle.join_oracle(A, B):
                res.failures.append(("join", str(A), str(B)))
            if meet_formula(A, B) != oracle.meet_oracle(A, B):
                res.failures.append(("meet", str(A), str(B)))
    return res


def check_counts(max_size: int) -> CheckResult:
    res = CheckResult("interval counts: DP, closed form, brute force", 0, [])
    table = dp_tables(max_size)
    for n in range(max_size + 1):
        res.checked += 1
        values = (table.intervals(n), tutte_formula(n), oracle.count_intervals_oracle(n, limit=max_size))
        if len(set(values)) != 1:
            res.failures.append((n, values))
    return res


def check_hasse(max_size: int) -> CheckResult:
    res = CheckResult("rotation edges form the transitive reduction", 0, [])
    for n in range(max_size + 1):
        res.checked += 1
        g = hasse(canonical_frontier(n))
        reduced = oracle.transitive_reduction(g.nodes, decide)
        if g.edges != reduced.edges:
            res.failures.append(n)
    return res


SUITES: list[Callable[[int], CheckResult]] = [
    check_decide,
    check_coherence,
    check_lattice,
    check_counts,
    check_hasse,
]


def run_all(max_size: int) -> Iterator[CheckResult]:
    for suite in SUITES:
        yield suite(max_size)
