"""
Lattice structure of the Tamari order over a fixed frontier.

Joins are computed by passing to maximal decompositions: the join of two
formulas is the left-associated product of the join of their decompositions,
and the join of two contexts splits along the pushout of their underlying
compositions into strictly smaller formula joins.  Meets are obtained by
mirroring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .focusing import derivable
from .term import (
    Atom,
    Formula,
    Product,
    frontier,
    mirror,
    phi,
    print_formula,
    psi,
    right_rotations,
)


class FrontierMismatch(ValueError):
    pass


class LimitExceeded(ValueError):
    pass


def _same_frontier(x, y) -> tuple:
    fx, fy = frontier(x), frontier(y)
    if fx != fy:
        raise FrontierMismatch(
            f"frontiers differ: {' '.join(a.name for a in fx)} vs {' '.join(a.name for a in fy)}"
        )
    return fx


# ---------- substitution order on contexts ----------


def leq_context(gamma: Sequence[Formula], theta: Sequence[Formula]) -> bool:
    """``gamma <= theta``: gamma splits into consecutive blocks, block i deriving ``theta[i]``."""
    gamma, theta = tuple(gamma), tuple(theta)
    if frontier(gamma) != frontier(theta):
        return False
    i = 0
    for B in theta:
        start, seen = i, 0
        while seen < B.leaves:
            seen += gamma[i].leaves
            i += 1
        if seen != B.leaves or not derivable(gamma[start:i], B):
            return False
    return True


# ---------- compositions ----------


@dataclass(frozen=True)
class Composition:
    """Ordered partition of ``sum(blocks)`` items into consecutive non-empty blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if any(not isinstance(b, int) or b < 1 for b in blocks):
            raise ValueError(f"block lengths must be positive integers: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def total(self) -> int:
        return sum(self.blocks)

    @property
    def cuts(self) -> frozenset:
        """Positions ``1..total-1`` after which a new block starts."""
        out, pos = set(), 0
        for b in self.blocks[:-1]:
            pos += b
            out.add(pos)
        return frozenset(out)

    @property
    def mask(self) -> int:
        """Bit ``i`` set iff items ``i`` and ``i+1`` share a block."""
        cuts = self.cuts
        return sum(1 << (i - 1) for i in range(1, self.total) if i not in cuts)

    @classmethod
    def from_cuts(cls, total: int, cuts) -> "Composition":
        bounds = [0] + sorted(cuts) + [total]
        return cls(tuple(b - a for a, b in zip(bounds, bounds[1:])))

    def refines(self, other: "Composition") -> bool:
        """True iff ``other`` is obtained from ``self`` by merging adjacent blocks."""
        return self.total == other.total and other.cuts <= self.cuts

    def __str__(self):
        return "(" + ";".join(map(str, self.blocks)) + ")"


def composition_of(ctx: Sequence[Formula]) -> Composition:
    return Composition(tuple(A.leaves for A in ctx))


def compose(beta: Composition, alpha: Composition) -> Composition:
    """Merge the blocks of ``alpha`` as grouped by ``beta``."""
    if beta.total != len(alpha.blocks):
        raise ValueError(f"{beta} does not partition the {len(alpha.blocks)} blocks of {alpha}")
    out, i = [], 0
    for b in beta.blocks:
        out.append(sum(alpha.blocks[i:i + b]))
        i += b
    return Composition(tuple(out))


def _mediator(alpha: Composition, gamma: Composition) -> Composition:
    counts, pos, n = [], 0, 0
    targets = iter(sorted(gamma.cuts | {gamma.total}))
    target = next(targets)
    for b in alpha.blocks:
        pos += b
        n += 1
        if pos == target:
            counts.append(n)
            n = 0
            target = next(targets, None)
    return Composition(tuple(counts))


def pushout(alpha: Composition, alpha2: Composition) -> tuple:
    """``(beta, beta2, gamma)`` with ``gamma`` the finest common coarsening and
    ``compose(beta, alpha) == compose(beta2, alpha2) == gamma``."""
    if alpha.total != alpha2.total:
        raise FrontierMismatch(f"compositions of {alpha.total} and {alpha2.total} items")
    gamma = Composition.from_cuts(alpha.total, alpha.cuts & alpha2.cuts)
    return _mediator(alpha, gamma), _mediator(alpha2, gamma), gamma


# ---------- joins and meets ----------


def join_formula(A: Formula, B: Formula) -> Formula:
    """Least upper bound of two formulas with the same frontier."""
    _same_frontier(A, B)
    return _join(A, B)


def _join(A: Formula, B: Formula) -> Formula:
    if isinstance(A, Atom):
        return A
    return phi(_join_context(psi(A), psi(B), must_split=True))


def join_context(gamma: Sequence[Formula], theta: Sequence[Formula]) -> tuple:
    """Least upper bound of two contexts with the same frontier."""
    _same_frontier(tuple(gamma), tuple(theta))
    return _join_context(tuple(gamma), tuple(theta))


def _join_context(gamma: tuple, theta: tuple, must_split: bool = False) -> tuple:
    beta, beta2, merged = pushout(composition_of(gamma), composition_of(theta))
    # decompositions of non-atomic formulas both start with the same atom,
    # so the pushout has at least two blocks and every sub-join is smaller
    if must_split and len(merged.blocks) < 2:
        raise AssertionError(f"join of {print_formula(phi(gamma))} and {print_formula(phi(theta))} does not shrink")
    out, i, j = [], 0, 0
    for b, b2 in zip(beta.blocks, beta2.blocks):
        out.append(_join(phi(gamma[i:i + b]), phi(theta[j:j + b2])))
        i, j = i + b, j + b2
    return tuple(out)


def meet_formula(A: Formula, B: Formula) -> Formula:
    """Greatest lower bound, via the mirror duality."""
    _same_frontier(A, B)
    return mirror(_join(mirror(A), mirror(B)))


def bottom(omega: Sequence[Atom]) -> Formula:
    """Least formula over ``omega``: the left comb."""
    if not omega:
        raise ValueError("empty frontier")
    return phi(tuple(omega))


def top(omega: Sequence[Atom]) -> Formula:
    """Greatest formula over ``omega``: the right comb."""
    if not omega:
        raise ValueError("empty frontier")
    return mirror(bottom(tuple(reversed(omega))))


# ---------- enumeration and Hasse diagrams ----------


def enumerate_trees(omega: Sequence[Atom]) -> list:
    """All formulas with frontier ``omega``, left subtree size ascending at every node."""
    omega = tuple(omega)
    if not omega:
        raise ValueError("empty frontier")
    table: dict = {}
    m = len(omega)
    for length in range(1, m + 1):
        for i in range(m - length + 1):
            if length == 1:
                table[i, 1] = [omega[i]]
                continue
            trees = []
            for left_len in range(1, length):
                lefts = table[i, left_len]
                rights = table[i + left_len, length - left_len]
                trees.extend(Product(l, r) for l in lefts for r in rights)
            table[i, length] = trees
    return table[0, m]


@dataclass(frozen=True)
class HasseGraph:
    nodes: tuple
    edges: tuple  # (lower index, upper index) pairs into ``nodes``

    def edge_formulas(self) -> list:
        return [(self.nodes[a], self.nodes[b]) for a, b in self.edges]


DEFAULT_HASSE_LIMIT = 9


def hasse(omega: Sequence[Atom], limit: int = DEFAULT_HASSE_LIMIT) -> HasseGraph:
    """Hasse diagram of the trees over ``omega``; edges are single right rotations."""
    omega = tuple(omega)
    if len(omega) > limit:
        raise LimitExceeded(f"frontier of length {len(omega)} exceeds the limit {limit}")
    nodes = enumerate_trees(omega)
    index = {A: i for i, A in enumerate(nodes)}
    edges = sorted({(i, index[B]) for i, A in enumerate(nodes) for B in right_rotations(A)})
    return HasseGraph(tuple(nodes), tuple(edges))


def to_dot(g: HasseGraph, name: str = "") -> str:
    head = f"digraph {name} {{" if name else "digraph {"
    lines = [head]
    for i, A in enumerate(g.nodes):
        lines.append(f'  n{i} [label="{print_formula(A)}"];')
    for a, b in g.edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
