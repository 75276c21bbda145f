import itertools

import pytest
from hypothesis import given, settings

from support import C, F, all_contexts, pairs, tree_pairs
from tamari import oracle
from tamari.focusing import decide, derivable
from tamari.lattice import (
    Composition,
    FrontierMismatch,
    HasseGraph,
    LimitExceeded,
    bottom,
    compose,
    composition_of,
    enumerate_trees,
    hasse,
    join_context,
    join_formula,
    leq_context,
    meet_formula,
    pushout,
    to_dot,
    top,
)
from tamari.term import Atom, canonical_frontier, phi

p, q, r, s = (Atom(x) for x in "pqrs")

WORKED_A = F("p*((q*(r*((s*t)*u)))*v)")
WORKED_B = F("(p*(q*r))*((s*t)*(u*v))")
WORKED_JOIN = F("p*(q*(r*((s*t)*(u*v))))")


# ---------- substitution order ----------


def test_leq_context_examples():
    assert leq_context(C("p, q, r"), C("p*q, r"))
    assert leq_context((), ())
    assert not leq_context(C("p*q, r"), C("p, q*r"))
    assert not leq_context(C("p, q"), C("q, p"))


@pytest.mark.parametrize("m", range(1, 5))
def test_least_context(m):
    omega = canonical_frontier(m - 1)
    for theta in all_contexts(omega):
        assert leq_context(omega, theta)


@pytest.mark.parametrize("m", range(1, 5))
def test_multicut_monotonicity(m):
    omega = canonical_frontier(m - 1)
    ctxs = list(all_contexts(omega))
    goals = enumerate_trees(omega)
    for g1, g2 in itertools.product(ctxs, ctxs):
        if not leq_context(g1, g2):
            continue
        assert composition_of(g1).refines(composition_of(g2))
        for A in goals:
            if derivable(g2, A):
                assert derivable(g1, A)


# ---------- compositions ----------


def test_composition_of():
    assert composition_of(C("p*q, r")) == Composition((2, 1))
    assert composition_of(C("p, q, r")) == Composition((1, 1, 1))
    assert composition_of(()) == Composition(())


def test_composition_validation_and_bits():
    with pytest.raises(ValueError):
        Composition((1, 0))
    c = Composition((2, 1, 3))
    assert c.total == 6 and c.cuts == {2, 3}
    assert Composition.from_cuts(6, c.cuts) == c
    # bit i-1 set iff items i and i+1 share a block
    assert c.mask == 0b11001
    assert str(c) == "(2;1;3)"


def _all_compositions(total):
    for bits in itertools.product((0, 1), repeat=total - 1):
        yield Composition.from_cuts(total, {i + 1 for i, b in enumerate(bits) if b})


def _pushout_by_search(a, b):
    common = [g for g in _all_compositions(a.total) if a.refines(g) and b.refines(g)]
    finest = [g for g in common if all(g.refines(h) for h in common)]
    assert len(finest) == 1
    return finest[0]


def test_pushout_relatively_prime_pair():
    a, b = Composition((1, 2)), Composition((2, 1))
    beta, beta2, gamma = pushout(a, b)
    assert gamma == Composition((3,)) == _pushout_by_search(a, b)
    assert beta == Composition((2,)) and beta2 == Composition((2,))


def test_pushout_idempotent_and_absorbing():
    a = Composition((2, 1, 3))
    beta, beta2, gamma = pushout(a, a)
    assert gamma == a and beta == beta2 == Composition((1, 1, 1))
    assert pushout(Composition((1, 1, 1)), Composition((3,)))[2] == Composition((3,))
    with pytest.raises(FrontierMismatch):
        pushout(Composition((1,)), Composition((2,)))


@pytest.mark.parametrize("total", range(1, 7))
def test_pushout_is_finest_common_coarsening(total):
    comps = list(_all_compositions(total))
    for a, b in itertools.product(comps, comps):
        beta, beta2, gamma = pushout(a, b)
        assert gamma == _pushout_by_search(a, b)
        assert compose(beta, a) == gamma == compose(beta2, b)


# ---------- joins and meets ----------


def test_worked_join_example():
    assert join_formula(WORKED_A, WORKED_B) == WORKED_JOIN


def test_join_examples():
    A = F("(p*q)*(r*s)")
    assert join_formula(A, A) == A
    assert join_formula(F("(p*q)*r"), F("p*(q*r)")) == F("p*(q*r)")
    with pytest.raises(FrontierMismatch):
        join_formula(F("p*q"), F("q*p"))


def test_join_context_examples():
    assert join_context(C("p, q, r"), C("p, q, r")) == C("p, q, r")
    assert join_context(C("p*q, r"), C("p, q*r")) == (F("p*(q*r)"),)
    assert join_context(C("p, (q*r)*s"), C("p, q*(r*s)")) == C("p, q*(r*s)")


def test_meet_examples():
    assert meet_formula(F("(p*q)*r"), F("p*(q*r)")) == F("(p*q)*r")
    A = F("p*((q*r)*s)")
    assert meet_formula(A, A) == A


@pytest.mark.parametrize("n", range(5))
def test_join_meet_against_oracle(n):
    for A, B in pairs(n):
        assert join_formula(A, B) == oracle.join_oracle(A, B)
        assert meet_formula(A, B) == oracle.meet_oracle(A, B)


@pytest.mark.parametrize("n", range(6))
def test_universal_properties(n):
    trees = enumerate_trees(canonical_frontier(n))
    up = {(A, B): decide(A, B) for A in trees for B in trees}
    for A, B in itertools.product(trees, trees):
        J, M = join_formula(A, B), meet_formula(A, B)
        assert up[A, J] and up[B, J]
        assert up[M, A] and up[M, B]
        for X in trees:
            if up[A, X] and up[B, X]:
                assert up[J, X]
            if up[X, A] and up[X, B]:
                assert up[X, M]


@settings(max_examples=150, deadline=None)
@given(tree_pairs(10))
def test_join_is_an_upper_bound_at_larger_sizes(pair):
    A, B = pair
    J, M = join_formula(A, B), meet_formula(A, B)
    assert decide(A, J) and decide(B, J) and decide(M, A) and decide(M, B)
    assert join_formula(A, J) == J and meet_formula(M, B) == M


def test_bottom_and_top():
    omega = (p, q, r, s)
    assert bottom(omega) == F("((p*q)*r)*s")
    assert top(omega) == F("p*(q*(r*s))")
    trees = enumerate_trees(omega)
    maxima = [A for A in trees if all(oracle.leq_oracle(B, A) for B in trees)]
    assert maxima == [top(omega)]
    assert bottom((p,)) == top((p,)) == p
    with pytest.raises(ValueError):
        bottom(())


@pytest.mark.parametrize("m", range(1, 6))
def test_bottom_context_is_least(m):
    omega = canonical_frontier(m - 1)
    for A in enumerate_trees(omega):
        assert decide(bottom(omega), A) and decide(A, top(omega))
    assert phi(omega) == bottom(omega)


# ---------- enumeration and Hasse diagrams ----------


def test_enumeration_counts_and_order():
    assert len(enumerate_trees((p, q, r, s))) == 5
    assert len(enumerate_trees(canonical_frontier(4))) == 14
    assert enumerate_trees((p,)) == [p]
    assert enumerate_trees((p, q, r)) == [F("p*(q*r)"), F("(p*q)*r")]
    with pytest.raises(ValueError):
        enumerate_trees(())


@pytest.mark.parametrize("n", range(7))
def test_enumeration_matches_oracle_set(n):
    omega = canonical_frontier(n)
    trees = enumerate_trees(omega)
    assert len(set(trees)) == len(trees)
    assert set(trees) == set(oracle.all_trees(omega))


def test_hasse_pentagon():
    g = hasse((p, q, r, s))
    assert len(g.nodes) == 5 and len(g.edges) == 5


def test_hasse_t4():
    g = hasse(canonical_frontier(4))
    assert len(g.nodes) == 14
    assert len(g.edges) == 21
    assert len(oracle.transitive_reduction(g.nodes, oracle.leq_oracle).edges) == 21


def test_hasse_small_and_limit():
    g = hasse((p, q))
    assert len(g.nodes) == 1 and g.edges == ()
    with pytest.raises(LimitExceeded):
        hasse(canonical_frontier(3), limit=3)


@pytest.mark.parametrize("n", range(7))
def test_rotation_edges_are_the_transitive_reduction(n):
    g = hasse(canonical_frontier(n))
    for A, B in g.edge_formulas():
        assert A != B and decide(A, B)
    assert g.edges == oracle.transitive_reduction(g.nodes, decide).edges


def test_dot_output():
    g = hasse((p, q, r, s))
    dot = to_dot(g)
    lines = dot.splitlines()
    assert lines[0] == "digraph {" and lines[-1] == "}"
    assert sum("label=" in line for line in lines) == 5
    assert sum("->" in line for line in lines) == 5
    assert '  n0 [label="p*(q*(r*s))"];' in lines
    assert to_dot(hasse((p, q, r, s))) == dot
    assert to_dot(HasseGraph((), ())) == "digraph {\n}\n"
