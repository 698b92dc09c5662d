import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tq import catalog, gb, quiver, toric
from tq.quiver import Arrow, Quiver

from fixtures import F1_ARROWS, F2_ARROWS, F2_IR, THREEFOLD_ARROWS, LIST_NAMES, example, monomial_of, ring_for


def arrow_table(Q):
    return [(a.tail, a.head, a.label) for a in Q.arrows]


def expected_table(rows, nrays):
    return [(t, h, monomial_of(lab, nrays)) for t, h, lab in rows]


@st.composite
def acyclic_quivers(draw, max_vertices=5, max_arrows=8):
    """Rooted acyclic quivers: arrows go from lower to higher vertices and every vertex >= 1 is hit."""
    n = draw(st.integers(2, max_vertices))
    arrows = []
    for v in range(1, n):
        arrows.append((draw(st.integers(0, v - 1)), v))
    for _ in range(draw(st.integers(0, max_arrows - (n - 1)))):
        t = draw(st.integers(0, n - 2))
        arrows.append((t, draw(st.integers(t + 1, n - 1))))
    arrows = draw(st.permutations(arrows))
    return Quiver(n, tuple(Arrow(t, h, ()) for t, h in arrows))


def brute_paths(Q, i, j):
    """Oracle: every arrow sequence of length <= r that is a walk from i to j."""
    if i == j:
        return [()]
    out = []
    for length in range(1, Q.nvertices):
        for seq in itertools.product(range(Q.narrows), repeat=length):
            v = i
            ok = True
            for k in seq:
                if Q.arrows[k].tail != v:
                    ok = False
                    break
                v = Q.arrows[k].head
            if ok and v == j:
                out.append(seq)
    return sorted(out)


def brute_trees(Q):
    """Oracle: r-subsets in which every vertex has indegree one and is reached from 0."""
    out = []
    for sub in itertools.combinations(range(Q.narrows), Q.r):
        heads = [Q.arrows[k].head for k in sub]
        if sorted(heads) != list(range(1, Q.nvertices)):
            continue
        reached = {0}
        changed = True
        while changed:
            changed = False
            for k in sub:
                a = Q.arrows[k]
                if a.tail in reached and a.head not in reached:
                    reached.add(a.head)
                    changed = True
        if len(reached) == Q.nvertices:
            out.append(sub)
    return sorted(out)


# --- incidence and circulations ------------------------------------------------------


def test_incidence_single_arrow():
    Q = Quiver(2, ((0, 1),))
    assert quiver.incidence_matrix(Q).tolist() == [[-1], [1]]


def test_incidence_f1():
    _, _, Q = example("paper:f1-list")
    assert quiver.incidence_matrix(Q).tolist() == [[-1, 0, -1, -1], [1, -1, 1, 0], [0, 1, 0, 1]]


def test_incidence_f2():
    from fixtures import F2_PI

    _, _, Q = example("paper:f2-list")
    assert quiver.incidence_matrix(Q).tolist() == F2_PI[:4]


def test_circulations_of_tree():
    Q = Quiver(3, ((0, 1), (1, 2)))
    assert quiver.circulation_basis(Q).rank == 0


def test_circulations_f1_supplied():
    _, _, Q = example("paper:f1-list")
    circ = [quiver.parse_walk(w, 4) for w in catalog.bundle_list("paper:f1-list").circuits]
    B = quiver.circulation_basis(Q, circ)
    assert B.vectors() == [(1, 0, -1, 0), (0, 1, 1, -1)]


def test_circulations_f2_rank():
    _, _, Q = example("paper:f2-list")
    assert quiver.circulation_basis(Q).rank == 5


def test_supplied_basis_rejected():
    _, _, Q = example("paper:f1-list")
    with pytest.raises(quiver.SuppliedBasisInvalid):
        quiver.circulation_basis(Q, [(1, 0, -1, 0)])
    with pytest.raises(quiver.SuppliedBasisInvalid):
        quiver.circulation_basis(Q, [(1, 0, 0, 0), (0, 1, 1, -1)])
    # index-2 sublattice
    with pytest.raises(quiver.SuppliedBasisInvalid):
        quiver.circulation_basis(Q, [(2, 0, -2, 0), (0, 1, 1, -1)])


def test_parse_walk():
    assert quiver.parse_walk("a1 a6 a7^-1 a3^-1", 8) == (1, 0, -1, 0, 0, 1, -1, 0)
    assert quiver.parse_walk("a1a3^{-1}", 4) == (1, 0, -1, 0)
    with pytest.raises(quiver.SuppliedBasisInvalid):
        quiver.parse_walk("a9", 4)
    with pytest.raises(quiver.SuppliedBasisInvalid):
        quiver.parse_walk("b1", 4)


@settings(max_examples=50, deadline=None)
@given(acyclic_quivers())
def test_circulation_rank(Q):
    # connected quiver: rank Cir = |Q1| - |Q0| + 1
    B = quiver.circulation_basis(Q)
    assert B.rank == Q.narrows - Q.nvertices + 1
    inc = quiver.incidence_matrix(Q)
    for v in B.vectors():
        assert not any(inc @ v)


# --- paths and trees --------------------------------------------------------------------


def test_paths_f2_source_to_sink():
    _, _, Q = example("paper:f2-list")
    paths = quiver.enumerate_paths(Q, 0, 3)
    assert paths == brute_paths(Q, 0, 3)
    assert len(paths) == 12


def test_paths_f1():
    _, _, Q = example("paper:f1-list")
    assert quiver.enumerate_paths(Q, 0, 2) == [(0, 1), (2, 1), (3,)]


def test_trivial_path():
    _, _, Q = example("paper:f2-list")
    assert quiver.enumerate_paths(Q, 2, 2) == [()]
    assert quiver.enumerate_paths(Q, 3, 0) == []


def test_path_cap():
    _, _, Q = example("paper:f2-list")
    with pytest.raises(quiver.PathCapExceeded):
        quiver.enumerate_paths(Q, 0, 3, cap=5)
    with pytest.raises(quiver.PathCapExceeded):
        quiver.all_paths(Q, cap=10)


def test_path_cap_env(monkeypatch):
    monkeypatch.setenv("TQ_PATH_CAP", "7")
    assert quiver.path_cap() == 7
    monkeypatch.delenv("TQ_PATH_CAP")
    assert quiver.path_cap() == quiver.DEFAULT_PATH_CAP


@settings(max_examples=40, deadline=None)
@given(acyclic_quivers(max_vertices=4, max_arrows=6))
def test_paths_match_brute_force(Q):
    for i in range(Q.nvertices):
        for j in range(Q.nvertices):
            assert quiver.enumerate_paths(Q, i, j) == brute_paths(Q, i, j)


def test_trees_parallel_arrows():
    for m in range(1, 5):
        Q = Quiver(2, tuple((0, 1) for _ in range(m)))
        assert quiver.spanning_trees_rooted(Q) == [(k,) for k in range(m)]


def test_trees_examples():
    assert len(quiver.spanning_trees_rooted(example("paper:f2-list")[2])) == 18
    _, _, Q = example("paper:f1-list")
    assert sorted(quiver.spanning_trees_rooted(Q)) == brute_trees(Q)
    assert len(brute_trees(Q)) == 4


@settings(max_examples=50, deadline=None)
@given(acyclic_quivers())
def test_trees_match_brute_force(Q):
    trees = quiver.spanning_trees_rooted(Q)
    assert sorted(trees) == brute_trees(Q)
    prod = 1
    for v in range(1, Q.nvertices):
        prod *= len(Q.incoming(v))
    assert len(trees) == prod


def test_unreachable_vertex():
    with pytest.raises(quiver.VertexUnreachable):
        quiver.spanning_trees_rooted(Quiver(3, ((0, 1),)))


def test_special_weight():
    assert quiver.special_weight(Quiver(2, ((0, 1),))) == (-1, 1)
    assert quiver.special_weight(example("paper:f2-list")[2]) == (-3, 1, 1, 1)
    assert quiver.special_weight(example("paper:threefold-list")[2]) == (-5, 1, 1, 1, 1, 1)


def test_quiver_predicates():
    Q = Quiver(3, ((0, 1), (1, 2), (2, 1)))
    assert not Q.is_acyclic() and Q.is_connected() and Q.is_rooted()
    Q = Quiver(3, ((0, 1),))
    assert not Q.is_connected() and Q.sources() == [0, 2]


def test_permuted():
    _, _, Q = example("paper:f1-list")
    P = Q.permuted([3, 2, 1, 0])
    assert P.arrows == tuple(reversed(Q.arrows))
    with pytest.raises(ValueError):
        Q.permuted([0, 0, 1, 2])


# --- sections -------------------------------------------------------------------------


def test_indecomposable_f1():
    fan, bundles, _ = example("paper:f1-list")
    assert quiver.indecomposable_sections(fan, bundles, 0, 2) == [(0, 0, 0, 1)]


def test_indecomposable_f2():
    fan, bundles, _ = example("paper:f2-list")
    assert quiver.indecomposable_sections(fan, bundles, 1, 2) == [(1, 1, 0, 0), (0, 1, 1, 0)]


def test_indecomposable_p1_fine():
    fan, bundles, _ = example("paper:p1-fine")
    assert quiver.indecomposable_sections(fan, bundles, 0, 2) == []


def test_quiver_f1():
    _, _, Q = example("paper:f1-list")
    assert arrow_table(Q) == expected_table(F1_ARROWS, 4)


def test_quiver_f2():
    _, _, Q = example("paper:f2-list")
    assert arrow_table(Q) == expected_table(F2_ARROWS, 4)


def test_quiver_threefold():
    _, _, Q = example("paper:threefold-list")
    assert arrow_table(Q) == expected_table(THREEFOLD_ARROWS, 5)


def test_quiver_p1_fine():
    _, _, Q = example("paper:p1-fine")
    labels = [(2, 0), (1, 1), (0, 2)]
    assert arrow_table(Q) == [(0, 1, l) for l in labels] + [(1, 2, l) for l in labels]


def test_duplicate_bundle():
    fan = catalog.fan("hirzebruch:2")
    with pytest.raises(quiver.DuplicateBundle):
        quiver.complete_quiver_of_sections(fan, [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0)])


def test_bad_bundle_lists():
    fan = catalog.fan("projective:1")
    with pytest.raises(quiver.QuiverError):
        quiver.complete_quiver_of_sections(fan, [(1, 0), (2, 0)])
    with pytest.raises(quiver.QuiverError):
        quiver.complete_quiver_of_sections(fan, [(0, 0), (2, 0, 0)])
    with pytest.raises(quiver.EmptySections):
        quiver.complete_quiver_of_sections(fan, [(0, 0), (-1, 0)])


def test_ordering_convention():
    fan = catalog.fan("projective:1")
    with pytest.raises(quiver.NoValidOrdering):
        quiver.complete_quiver_of_sections(fan, [(0, 0), (4, 0), (2, 0)])
    Q = quiver.complete_quiver_of_sections(fan, [(0, 0), (4, 0), (2, 0)], reorder=True)
    assert Q.bundles == ((0, 0), (2, 0), (4, 0))


def test_arrow_permutation_missing():
    _, _, Q = example("paper:f1-list")
    with pytest.raises(quiver.QuiverError):
        quiver.arrow_permutation(Q, [(0, 1, (5, 0, 0, 0))])


@pytest.mark.parametrize("name", LIST_NAMES)
def test_path_labels_cover_sections(name):
    fan, bundles, Q = example(name)
    paths = quiver.all_paths(Q)
    for i in range(Q.nvertices):
        for j in range(i + 1, Q.nvertices):
            got = {quiver.path_divisor(Q, p) for p in paths.get((i, j), [])}
            want = set(toric.global_sections(fan, quiver._difference(bundles[j], bundles[i])))
            assert got == want


# --- relations ---------------------------------------------------------------------


def test_relations_f1_empty():
    assert quiver.relations(example("paper:f1-list")[2]) == []


def test_relations_parallel_distinct_labels():
    Q = Quiver(2, (Arrow(0, 1, (1, 0)), Arrow(0, 1, (0, 1))))
    assert quiver.relations(Q) == []


def relation_binomial(R, Q, rel):
    return R.binomial(quiver.path_vector(Q, rel.canonical), quiver.path_vector(Q, rel.other))


def test_relations_f2():
    _, _, Q = example("paper:f2-list")
    rels = quiver.relations(Q)
    R = ring_for(8)
    got = gb.Ideal(R, [relation_binomial(R, Q, r) for r in rels])
    assert gb.equal(got, gb.Ideal(R, F2_IR))


@pytest.mark.parametrize("name", LIST_NAMES)
def test_relations_share_endpoints_and_labels(name):
    _, _, Q = example(name)
    for rel in quiver.relations(Q):
        assert rel.canonical < rel.other
        for p in (rel.canonical, rel.other):
            assert Q.arrows[p[0]].tail == rel.tail and Q.arrows[p[-1]].head == rel.head
            assert quiver.path_divisor(Q, p) == rel.divisor


def test_to_dot():
    _, _, Q = example("paper:f1-list")
    dot = quiver.to_dot(Q)
    assert dot.startswith("digraph Q {")
    assert '0 -> 2 [label="a4: x4"]' in dot
    assert dot.count("->") == 4
