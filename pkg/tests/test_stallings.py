import itertools

import hypothesis.strategies as st
from hypothesis import given, settings

from qnbench.stallings import (
    build_subgroup_graph,
    conjugate_graph,
    free_qn1_decide,
    graph_index,
    graph_intersect,
    graph_membership,
    graphs_equal,
)
from qnbench.words import concat, generator, invert_word, reduce_word

A = generator(0)
B = generator(1)
AI = invert_word(A)
BI = invert_word(B)

# index-2 subgroup of F2: kernel of a -> 1, b -> 0 (mod 2)
INDEX_TWO = [concat(A, A), B, concat(A, B, AI)]


def words_in(gens, max_len):
    """Oracle: all products of at most max_len generator letters."""
    letters = [g for w in gens for g in (w, invert_word(w))]
    seen = {()}
    frontier = {()}
    for _ in range(max_len):
        frontier = {concat(w, l) for w in frontier for l in letters}
        seen |= frontier
    return seen


def test_cyclic_subgroup_graph():
    g = build_subgroup_graph([A])
    assert g.num_vertices == 1
    assert g.edges() == [(0, 0, 0)]


def test_index_two_graph_is_complete():
    g = build_subgroup_graph(INDEX_TWO)
    assert g.num_vertices == 2
    # every vertex carries every label in both directions
    for v, gen in itertools.product(range(2), range(2)):
        assert (v, gen) in g.out and (v, gen) in g.inn


def test_a2_b_graph():
    g = build_subgroup_graph([concat(A, A), B])
    assert g.num_vertices == 2
    # b-loop at the basepoint only
    assert g.out[(0, 1)] == 0
    assert (1, 1) not in g.out


def test_empty_generators_trivial_subgroup():
    g = build_subgroup_graph([])
    assert g.num_vertices == 1
    assert g.edges() == []
    assert graph_membership(g, ())
    assert not graph_membership(g, A)


def test_membership_examples():
    g = build_subgroup_graph([A])
    assert graph_membership(g, concat(A, A, A))
    assert not graph_membership(g, B)
    assert not graph_membership(g, concat(B, A, BI))


@settings(max_examples=60)
@given(st.lists(st.integers(0, 5), min_size=0, max_size=6))
def test_membership_agrees_with_word_search(picks):
    gens = [concat(A, A), concat(B, A)]
    g = build_subgroup_graph(gens)
    letters = [gens[0], invert_word(gens[0]), gens[1], invert_word(gens[1])]
    w = ()
    for p in picks:
        w = concat(w, letters[p % 4])
    assert graph_membership(g, w)


def test_graph_index():
    assert graph_index(build_subgroup_graph(INDEX_TWO), [0, 1]) == ("finite", 2)
    assert graph_index(build_subgroup_graph([A]), [0, 1]) == ("infinite", None)
    assert graph_index(build_subgroup_graph([A, B]), [0, 1]) == ("finite", 1)


def test_intersection():
    ga = build_subgroup_graph([A])
    gb = build_subgroup_graph([B])
    meet = graph_intersect(ga, gb)
    assert meet.num_vertices == 1 and meet.edges() == []

    ga2 = build_subgroup_graph([concat(A, A)])
    meet2 = graph_intersect(ga, ga2)
    assert graphs_equal(meet2, ga2)

    h = build_subgroup_graph(INDEX_TWO)
    assert graphs_equal(graph_intersect(h, h), h)


@settings(max_examples=40)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_intersection_membership_iff_both(i, j):
    g1 = build_subgroup_graph([concat(A, A), B])
    g2 = build_subgroup_graph([A, concat(B, B)])
    meet = graph_intersect(g1, g2)
    w = concat(generator(0, i), generator(1, j))
    both = graph_membership(g1, w) and graph_membership(g2, w)
    assert graph_membership(meet, w) == both


def test_conjugates():
    ga = build_subgroup_graph([A])
    assert graphs_equal(conjugate_graph(ga, concat(A, A, A)), ga)

    byb = conjugate_graph(ga, B)
    assert graphs_equal(byb, build_subgroup_graph([concat(B, A, BI)]))
    assert not graphs_equal(byb, ga)

    triv = build_subgroup_graph([])
    assert graphs_equal(conjugate_graph(triv, concat(B, A)), triv)


@settings(max_examples=40)
@given(st.integers(-5, 5), st.integers(0, 3))
def test_conjugate_membership(k, l):
    g = build_subgroup_graph([concat(A, A), B])
    w = concat(generator(1, l), generator(0, 2 * k))
    conj = conjugate_graph(g, w)
    for h in [concat(A, A), B, concat(B, A, A)]:
        assert graph_membership(conj, concat(w, h, invert_word(w))) == graph_membership(g, h)


def test_folding_order_invariance():
    # same subgroup from shuffled generator lists gives identical graphs
    gens = [concat(A, A), B, concat(A, B, AI)]
    for perm in itertools.permutations(gens):
        assert graphs_equal(build_subgroup_graph(list(perm)), build_subgroup_graph(gens))


def test_complete_graph_example_from_hand_folding():
    g = build_subgroup_graph(INDEX_TWO)
    # complete: both vertices have a- and b-edges out and in
    assert {(v, gen) for v in range(2) for gen in range(2)} == set(g.out)


def test_free_qn1_member_gives_index_one():
    g = build_subgroup_graph([A])
    assert free_qn1_decide(g, generator(0, 5)) == ("in", 1)


def test_free_qn1_rejects_b_over_cyclic_a():
    g = build_subgroup_graph([A])
    assert free_qn1_decide(g, B) == ("out", None)


def test_free_qn1_finite_index_subgroup_commensurated():
    g = build_subgroup_graph(INDEX_TWO)
    kind, k = free_qn1_decide(g, A)
    assert kind == "in" and k <= 2


def brute_coset_orbit(gens, g, cap):
    """Oracle: left cosets h.g.H for h in the subgroup, via word search."""
    graph = build_subgroup_graph(gens)
    reps = [reduce_word(g)]
    frontier = [reduce_word(g)]
    letters = [w for x in gens for w in (x, invert_word(x))]
    while frontier and len(reps) <= cap:
        rep = frontier.pop(0)
        for l in letters:
            cand = concat(l, rep)
            if not any(graph_membership(graph, concat(invert_word(r), cand)) for r in reps):
                reps.append(cand)
                frontier.append(cand)
    return len(reps), not frontier


def test_free_qn1_matches_brute_orbit():
    g = build_subgroup_graph(INDEX_TWO)
    for word in [A, B, concat(A, B), concat(B, A, B)]:
        kind, k = free_qn1_decide(g, word)
        size, closed = brute_coset_orbit(INDEX_TWO, word, 8)
        assert kind == "in" and closed and k == size

    ga = build_subgroup_graph([A])
    size, closed = brute_coset_orbit([A], B, 12)
    assert free_qn1_decide(ga, B) == ("out", None) and not closed


def test_basis_and_rewrite():
    g = build_subgroup_graph(INDEX_TWO)
    basis = g.basis()
    assert len(basis) == 3  # rank of an index-2 subgroup of F2
    for w in basis:
        assert graph_membership(g, w)
    expr = g.rewrite_in_basis(concat(A, A, B))
    # reassemble from basis words and compare
    assembled = ()
    for idx, exp in expr:
        assembled = concat(assembled, basis[idx] if exp > 0 else invert_word(basis[idx]))
    assert assembled == reduce_word(concat(A, A, B))
    assert g.rewrite_in_basis(A) is None


def test_to_dot_mentions_edges():
    g = build_subgroup_graph([A])
    dot = g.to_dot()
    assert "digraph" in dot and "0 -> 0" in dot


def test_finite_index_matches_coset_enumeration():
    # oracle: BFS over left cosets wH using the even-a-exponent membership
    def member(w):
        return sum(e for gen, e in w if gen == 0) % 2 == 0

    reps = [()]
    frontier = [()]
    letters = [A, AI, B, BI]
    while frontier:
        rep = frontier.pop(0)
        for l in letters:
            cand = concat(rep, l)
            if not any(member(concat(invert_word(r), cand)) for r in reps):
                reps.append(cand)
                frontier.append(cand)
        if len(reps) > 8:
            break
    assert graph_index(build_subgroup_graph(INDEX_TWO), [0, 1]) == ("finite", len(reps))
