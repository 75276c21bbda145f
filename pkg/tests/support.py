"""Shared fixtures for the test suite: strategies, worked derivations, random derivations."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from tamari.calculus import Derivation, Sequent, cut, identity, times_l, times_r
from tamari.focusing import derivable, search_focused
from tamari.lattice import enumerate_trees
from tamari.term import (
    Atom,
    Formula,
    Product,
    canonical_frontier,
    frontier,
    parse_context,
    parse_formula,
    right_rotations,
)

F = parse_formula


def C(text: str) -> tuple:
    return parse_context(text)


# ---------- hypothesis strategies ----------

atom_names = st.from_regex(r"[a-z][a-zA-Z0-9_]{0,3}", fullmatch=True)


def formulas(max_leaves: int = 10, names=atom_names):
    """Arbitrary formulas (atom names may repeat)."""
    return st.recursive(
        names.map(Atom),
        lambda sub: st.tuples(sub, sub).map(lambda p: Product(*p)),
        max_leaves=max_leaves,
    )


@st.composite
def tree_over(draw, omega):
    """A uniformly-ish random bracketing of ``omega`` (random split at each node)."""
    omega = tuple(omega)
    if len(omega) == 1:
        return omega[0]
    i = draw(st.integers(1, len(omega) - 1))
    return Product(draw(tree_over(omega[:i])), draw(tree_over(omega[i:])))


@st.composite
def tree_pairs(draw, max_size: int = 7):
    n = draw(st.integers(0, max_size))
    omega = canonical_frontier(n)
    return draw(tree_over(omega)), draw(tree_over(omega))


@st.composite
def contexts_over(draw, omega, irreducible: bool = False):
    """A random context with frontier ``omega``; irreducible ones start with the first atom."""
    omega = tuple(omega)
    if irreducible:
        rest = draw(contexts_over(omega[1:])) if len(omega) > 1 else ()
        return (omega[0],) + rest
    cuts = sorted(draw(st.sets(st.integers(1, len(omega) - 1)))) if len(omega) > 1 else []
    bounds = [0] + cuts + [len(omega)]
    return tuple(draw(tree_over(omega[a:b])) for a, b in zip(bounds, bounds[1:]))


# ---------- exhaustive enumeration ----------


def all_contexts(omega):
    """Every context whose frontier is ``omega``."""
    omega = tuple(omega)
    m = len(omega)
    for bits in itertools.product((0, 1), repeat=m - 1):
        bounds = [0] + [i + 1 for i, b in enumerate(bits) if b] + [m]
        blocks = [enumerate_trees(omega[a:b]) for a, b in zip(bounds, bounds[1:])]
        yield from itertools.product(*blocks)


def pairs(n: int):
    trees = enumerate_trees(canonical_frontier(n))
    return [(A, B) for A in trees for B in trees]


# ---------- worked derivations ----------


def sa(A: Formula, B: Formula, Cf: Formula) -> Derivation:
    """The semi-associativity derivation ``(A*B)*C |- A*(B*C)`` with (possibly non-atomic) identities."""
    return times_l(times_l(times_r(identity(A), times_r(identity(B), identity(Cf)))))


def intro_derivation() -> Derivation:
    """Focused derivation of ``(p*(q*r))*s |- p*(q*(r*s))`` (ten nodes)."""
    p, q, r, s = (Atom(x) for x in "pqrs")
    rs = times_r(identity(r), identity(s))
    qrs = times_l(times_r(identity(q), rs))
    return times_l(times_l(times_r(identity(p), qrs)))


def cut_composed_example() -> Derivation:
    """``((p*q)*r)*s |- p*((q*r)*s)`` by cutting a monotonicity step into a semi-associativity step."""
    p, q, r, s = (Atom(x) for x in "pqrs")
    left = times_l(times_r(sa(p, q, r), identity(s)))
    right = sa(p, q * r, s)
    return cut(left, right, 0)


def focused_example() -> Derivation:
    """The focused derivation of ``((p*q)*r)*s |- p*((q*r)*s)``."""
    p, q, r, s = (Atom(x) for x in "pqrs")
    qr = times_r(identity(q), identity(r))
    qrs = times_r(qr, identity(s))
    return times_l(times_l(times_l(times_r(identity(p), qrs))))


# ---------- random valid derivations ----------


def random_upper(rng: random.Random, A: Formula, steps: int) -> Formula:
    """Walk up from ``A`` by a few random right rotations."""
    for _ in range(steps):
        ups = right_rotations(A)
        if not ups:
            break
        A = rng.choice(ups)
    return A


def random_tree(rng: random.Random, omega) -> Formula:
    omega = tuple(omega)
    if len(omega) == 1:
        return omega[0]
    i = rng.randrange(1, len(omega))
    return Product(random_tree(rng, omega[:i]), random_tree(rng, omega[i:]))


def random_derivation(rng: random.Random, ctx: tuple, goal: Formula, depth: int = 3) -> Derivation:
    """A random valid derivation of the derivable sequent ``ctx |- goal``.

    Built from focused pieces glued by cuts, unrestricted R and
    non-atomic identities, so the result is usually not focused.
    """
    options = ["focused"]
    if depth > 0:
        options += ["cut", "cut"]
        if isinstance(ctx[0], Product):
            options.append("L")
        if isinstance(goal, Product) and len(ctx) > 1:
            options.append("R")
        if len(ctx) == 1 and ctx[0] == goal:
            options.append("id")
    choice = rng.choice(options)
    if choice == "id":
        return identity(goal)
    if choice == "L":
        head = ctx[0]
        return times_l(random_derivation(rng, (head.left, head.right) + ctx[1:], goal, depth - 1))
    if choice == "R":
        for s in range(1, len(ctx)):
            if derivable(ctx[:s], goal.left) and derivable(ctx[s:], goal.right):
                return times_r(
                    random_derivation(rng, ctx[:s], goal.left, depth - 1),
                    random_derivation(rng, ctx[s:], goal.right, depth - 1),
                )
    if choice == "cut":
        # pick a segment and an intermediate formula A with seg |- A and ctx[:i], A, ctx[j:] |- goal
        i = rng.randrange(len(ctx))
        j = rng.randrange(i + 1, len(ctx) + 1)
        seg = ctx[i:j]
        candidates = [
            A for A in enumerate_trees(frontier(seg))
            if derivable(seg, A) and derivable(ctx[:i] + (A,) + ctx[j:], goal)
        ]
        if candidates:
            A = rng.choice(candidates)
            d = random_derivation(rng, seg, A, depth - 1)
            e = random_derivation(rng, ctx[:i] + (A,) + ctx[j:], goal, depth - 1)
            return cut(d, e, i)
    D = search_focused(Sequent(ctx, goal))
    assert D is not None, (ctx, goal)
    return D


def random_instance(rng: random.Random, max_size: int = 6) -> Derivation:
    n = rng.randrange(max_size + 1)
    A = random_tree(rng, canonical_frontier(n))
    B = random_upper(rng, A, rng.randrange(4))
    return random_derivation(rng, (A,), B)
