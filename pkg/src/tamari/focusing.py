"""
Focused proof search and normalization.

A focused derivation uses only L, the restricted right rule (left premise
context irreducible) and atomic identities.  Every derivable sequent has
exactly one, and the search below finds it without backtracking: the context
split at a right-focusing sequent is forced by frontier lengths.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Callable, Optional, Sequence

from .calculus import (
    Derivation,
    Rule,
    Sequent,
    check,
    identity,
    is_focused,
    times_l,
    times_r,
)
from .term import Atom, Formula, Product, leaf_count


class PreconditionError(ValueError):
    pass


def _sequent(s, goal=None) -> Sequent:
    if goal is not None:
        s = Sequent(tuple(s), goal)
    if not s.ctx:
        raise ValueError("focused search needs a non-empty context")
    return s


# ---------- search ----------


def search_focused(s: Sequent, goal: Optional[Formula] = None) -> Optional[Derivation]:
    """The focused derivation of ``s``, or None if ``s`` is not derivable.

    Accepts either a :class:`Sequent` or ``(ctx, goal)``.
    """
    s = _sequent(s, goal)
    if leaf_count(s.ctx) != s.goal.leaves:
        return None
    return _search(s.ctx, s.goal)


def _search(ctx: tuple, goal: Formula) -> Optional[Derivation]:
    # invariant: leaf_count(ctx) == goal.leaves
    head = ctx[0]
    if isinstance(head, Product):
        sub = _search((head.left, head.right) + ctx[1:], goal)
        return None if sub is None else times_l(sub)
    if isinstance(goal, Atom):
        if len(ctx) == 1 and head == goal:
            return identity(goal)
        return None
    need = goal.left.leaves
    seen = 0
    for i, A in enumerate(ctx):
        seen += A.leaves
        if seen >= need:
            break
    if seen != need:
        return None
    left = _search(ctx[: i + 1], goal.left)
    if left is None:
        return None
    right = _search(ctx[i + 1:], goal.right)
    if right is None:
        return None
    return times_r(left, right)


def derivable(ctx: Sequence[Formula], goal: Formula) -> bool:
    """Decide ``ctx |- goal`` by running the focused search as a stack machine.

    No derivation is built.  The context is kept reversed (leftmost formula on
    top) with running leaf totals, so the forced split of a right-focusing
    sequent is a binary search.  Runs in O(n log n) without recursion.
    """
    if not ctx:
        raise ValueError("focused search needs a non-empty context")
    items = list(reversed(ctx))
    cum = []
    total = 0
    for A in items:
        total += A.leaves
        cum.append(total)
    if total != goal.leaves:
        return False
    goals = [goal]
    while goals:
        g = goals.pop()
        head = items[-1]
        if isinstance(head, Product):
            # L: replace A*B by A, B
            items.pop()
            base = cum.pop() - head.leaves
            items.append(head.right)
            cum.append(base + head.right.leaves)
            items.append(head.left)
            cum.append(cum[-1] + head.left.leaves)
            goals.append(g)
        elif isinstance(g, Atom):
            if head != g:
                return False
            items.pop()
            cum.pop()
        else:
            # the current segment is the top of the stack with g.leaves leaves;
            # g.left must consume exactly the top j items
            target = cum[-1] - g.left.leaves
            j = bisect_left(cum, target)
            if j == len(cum) or cum[j] != target:
                return False
            goals.append(g.right)
            goals.append(g.left)
    return True


def decide(A: Formula, B: Formula) -> bool:
    """``A <= B`` in the Tamari order."""
    return derivable((A,), B)


def derivable_sequent(s: Sequent) -> bool:
    return derivable(s.ctx, s.goal)


# ---------- exhaustive counting ----------


def count_focused(s: Sequent, goal: Optional[Formula] = None) -> int:
    """Number of focused derivations of ``s``, trying every split at right-focusing sequents.

    Deliberately ignores frontier information so that the result is an
    independent check on uniqueness.
    """
    s = _sequent(s, goal)
    memo: dict = {}

    def count(ctx: tuple, goal: Formula) -> int:
        key = (ctx, goal)
        if key in memo:
            return memo[key]
        head = ctx[0]
        if isinstance(head, Product):
            n = count((head.left, head.right) + ctx[1:], goal)
        elif isinstance(goal, Atom):
            n = 1 if ctx == (goal,) else 0
        else:
            n = 0
            for i in range(1, len(ctx)):
                left = count(ctx[:i], goal.left)
                if left:
                    n += left * count(ctx[i:], goal.right)
        memo[key] = n
        return n

    return count(s.ctx, s.goal)


# ---------- admissible rules ----------


def _deduce(A: Formula, rest: tuple, goal: Formula, k: Callable[[Derivation], Derivation]) -> Derivation:
    """Focused derivation of ``A, rest |- goal``.

    ``k`` turns a focused derivation of ``G |- A`` (G irreducible) into one
    of ``G, rest |- goal``.
    """
    if isinstance(A, Atom):
        return k(identity(A))
    a1, a2 = A.left, A.right
    d2 = identity_expansion(a2)
    return times_l(_deduce(a1, (a2,) + rest, goal, lambda d1: k(times_r(d1, d2))))


def identity_expansion(A: Formula) -> Derivation:
    """Focused derivation of ``A |- A``."""
    return _deduce(A, (), A, lambda d: d)


def _cut(d: Derivation, e: Derivation, pos: int) -> Derivation:
    # d : T |- A,  e : G, A, D |- B  with A at e.ctx[pos]
    A = d.goal
    if isinstance(A, Atom):
        return e
    if e.rule is Rule.R:
        s = e.split
        e1, e2 = e.premises
        if pos < s:
            return times_r(_cut(d, e1, pos), e2)
        return times_r(e1, _cut(d, e2, pos - s))
    if e.rule is Rule.L:
        if pos > 0:
            return times_l(_cut(d, e.premises[0], pos + 1))
        (e_prem,) = e.premises
        if d.rule is Rule.L:
            return times_l(_cut(d.premises[0], e, 0))
        if d.rule is Rule.R:
            d1, d2 = d.premises
            # cut the right factor first so that position 0 still holds A1
            return _cut(d1, _cut(d2, e_prem, 1), 0)
    raise PreconditionError(f"cut of non-atomic {A} into a {e.rule.value} node is impossible for focused input")


def admit_cut(d: Derivation, e: Derivation, pos: int) -> Derivation:
    """Focused derivation of ``G, T, D |- B`` from focused ``d : T |- A`` and ``e : G, A, D |- B``."""
    if not is_focused(d) or not is_focused(e):
        raise PreconditionError("admit_cut expects focused derivations")
    if not 0 <= pos < len(e.ctx) or e.ctx[pos] != d.goal:
        raise PreconditionError(f"position {pos} of the right derivation does not hold {d.goal}")
    return _cut(d, e, pos)


def _times_r(d: Derivation, e: Derivation) -> Derivation:
    if d.rule is Rule.L:
        return times_l(_times_r(d.premises[0], e))
    return times_r(d, e)


def admit_times_r(d: Derivation, e: Derivation) -> Derivation:
    """Focused derivation of ``G, D |- A*B`` from focused ``d : G |- A`` and ``e : D |- B``."""
    if not is_focused(d) or not is_focused(e):
        raise PreconditionError("admit_times_r expects focused derivations")
    return _times_r(d, e)


def focus(D: Derivation) -> Derivation:
    """Turn any valid derivation into the focused derivation of the same sequent."""
    check(D)
    return _focus(D)


def _focus(D: Derivation) -> Derivation:
    prem = [_focus(p) for p in D.premises]
    if D.rule is Rule.L:
        return times_l(prem[0])
    if D.rule is Rule.R:
        return _times_r(prem[0], prem[1])
    if D.rule is Rule.ID:
        return identity_expansion(D.goal)
    return _cut(prem[0], prem[1], D.at)
