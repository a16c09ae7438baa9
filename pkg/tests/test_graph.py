from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from k8knot.graph import (
    CycleFamily,
    Graph,
    canonical_cycle,
    complete_graph,
    hamiltonian_cycles,
    n3_n4,
    nu1,
    nu2,
    nu_audit,
)
from oracles import cycle_edge_walk, hamiltonian_cycles_by_permutation


@pytest.mark.parametrize("n,edges", [(4, 6), (8, 28)])
def test_complete_graph_edges(n, edges):
    g = complete_graph(n)
    assert len(g.edges) == edges
    assert list(g.edges) == sorted(g.edges)
    assert all(g.edge_id(u, v) == i for i, (u, v) in enumerate(g.edges))


def test_complete_graph_rejects_small_n():
    with pytest.raises(ValueError):
        complete_graph(2)


def test_graph_rejects_loops_and_multi_edges():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


@pytest.mark.parametrize("n,count", [(4, 3), (5, 12), (6, 60), (7, 360), (8, 2520)])
def test_hamiltonian_counts(n, count):
    fam = hamiltonian_cycles(complete_graph(n))
    assert len(fam) == count
    assert fam.tag == "hamiltonian"


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_hamiltonian_cycles_match_permutation_oracle(n):
    fam = hamiltonian_cycles(complete_graph(n))
    assert sorted(c.vertices for c in fam) == hamiltonian_cycles_by_permutation(n)


def test_backtracking_on_non_complete_graph():
    # the 3-cube graph Q3 has 6 Hamiltonian cycles up to rotation and reflection
    edges = [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1]
    fam = hamiltonian_cycles(Graph.from_edges(8, edges))
    assert len(fam) == 6


def test_canonical_form():
    assert canonical_cycle([2, 0, 3, 1]) == (0, 2, 1, 3)
    assert canonical_cycle([0, 3, 2, 1]) == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        canonical_cycle([0, 1, 0])


def test_family_rejects_duplicates():
    g = complete_graph(4)
    with pytest.raises(ValueError):
        CycleFamily.from_vertex_lists(g, [[0, 1, 2, 3], [1, 2, 3, 0]])


def test_family_json_round_trip():
    g = complete_graph(5)
    fam = hamiltonian_cycles(g)
    back = CycleFamily.from_json(g, fam.to_json())
    assert [c.vertices for c in back] == [c.vertices for c in fam]


# -- nu1 / nu2 examples (vertices 1..4 of the K4 example are 0..3 here) --------

@pytest.fixture(scope="module")
def ham4():
    return hamiltonian_cycles(complete_graph(4))


def test_nu1_k4(ham4):
    # only 0-1-2-3 contains all three edges
    assert abs(nu1(ham4, (0, 1), (1, 2), (2, 3))) == 1


def test_nu2_k4(ham4):
    # only 0-1-3-2 qualifies; with references 0->2 and 1->3 the product is -1
    assert nu2(ham4, (0, 1), (2, 3), (0, 2), (1, 3)) == -1
    assert n3_n4(ham4, (0, 1), (2, 3), (0, 2), (1, 3)) == (0, 1)


def test_nu_empty_family():
    g = complete_graph(5)
    empty = CycleFamily(g, [])
    assert nu1(empty, (0, 1), (1, 2), (3, 4)) == 0
    assert nu2(empty, (0, 1), (2, 3), (0, 4), (1, 2)) == 0
    assert nu_audit(g, empty, 3).verdict == "hold"


def test_nu_argument_validation(ham4):
    with pytest.raises(ValueError):
        nu1(ham4, (0, 1), (2, 3), (0, 2))
    with pytest.raises(ValueError):
        nu2(ham4, (0, 1), (1, 2), (0, 2), (1, 3))
    with pytest.raises(ValueError):
        nu2(ham4, (0, 1), (2, 3), (0, 1), (2, 3))


def test_k4_audit_fails(ham4):
    rep = nu_audit(complete_graph(4), ham4, 3)
    assert rep.verdict == "fail"
    assert {abs(v) for v in rep.nu2.values()} == {1}


def _brute_nu1(cycles, a, b, e):
    """Walk each cycle in both directions and keep the one entering v along a."""
    v = (set(a) & set(b)).pop()
    total = 0
    for cyc in cycles:
        for walk in (cycle_edge_walk(cyc), cycle_edge_walk(cyc[::-1])):
            steps = {frozenset(s): s for s in walk}
            if not all(frozenset(x) in steps for x in (a, b, e)):
                break
            if steps[frozenset(a)][1] == v:
                total += 1 if steps[frozenset(e)] == e else -1
                break
    return total


def _brute_nu2(cycles, a, b, e, f):
    total = 0
    for cyc in cycles:
        walk = cycle_edge_walk(cyc)
        idx = {frozenset(s): i for i, s in enumerate(walk)}
        if not all(frozenset(x) in idx for x in (a, b, e, f)):
            continue
        i, j = sorted((idx[frozenset(a)], idx[frozenset(b)]))
        side = lambda k: i < k < j  # noqa: E731
        if side(idx[frozenset(e)]) == side(idx[frozenset(f)]):
            continue
        se = 1 if walk[idx[frozenset(e)]] == e else -1
        sf = 1 if walk[idx[frozenset(f)]] == f else -1
        total += se * sf
    return total


@pytest.mark.parametrize("n", [5, 6])
def test_audit_agrees_with_brute_force(n):
    g = complete_graph(n)
    fam = hamiltonian_cycles(g)
    cycles = hamiltonian_cycles_by_permutation(n)
    rep = nu_audit(g, fam, 3)
    for (a, b, e), val in rep.nu1.items():
        assert val == _brute_nu1(cycles, g.edges[a], g.edges[b], g.edges[e])
        assert val == nu1(fam, a, b, e)
    for ((a, b), (e, f)), val in rep.nu2.items():
        assert val == _brute_nu2(cycles, g.edges[a], g.edges[b], g.edges[e], g.edges[f])


def test_k8_nu2_values_divisible_by_six(ham8):
    g = ham8.graph
    rep = nu_audit(g, ham8, 3)
    assert all(v % 6 == 0 for v in rep.nu2.values())
    # spot-check the cycle-major audit against the per-tuple definition
    for key in list(rep.nu2)[::997]:
        (a, b), (e, f) = key
        assert rep.nu2[key] == nu2(ham8, a, b, e, f)


def test_k8_nu1_values(ham8):
    g = ham8.graph
    rep = nu_audit(g, ham8, 3)
    for (a, b, e), val in rep.nu1.items():
        # zero unless E extends the path A-B at one of its free ends
        (v,) = set(g.edges[a]) & set(g.edges[b])
        ends = (set(g.edges[a]) | set(g.edges[b])) - {v}
        extends = len(set(g.edges[e]) & ends) == 1 and v not in g.edges[e]
        triangle = set(g.edges[e]) == ends
        if extends and not triangle:
            assert abs(val) == 24
        else:
            assert val == 0
    for a, b, e in list(rep.nu1)[::211]:
        assert rep.nu1[(a, b, e)] == nu1(ham8, a, b, e)


def test_csv_export(tmp_path, ham4):
    rep = nu_audit(complete_graph(4), ham4, 3)
    path = tmp_path / "nu.csv"
    rep.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "kind,edge1,edge2,edge3,edge4,value,modulus,residue,ok"
    assert len(lines) == 1 + len(rep.nu1) + len(rep.nu2)
    assert any(line.startswith("nu2,") and line.endswith("False") for line in lines)


# -- properties ---------------------------------------------------------------

@pytest.fixture(scope="module")
def ham6():
    return hamiltonian_cycles(complete_graph(6))


def _quads(g):
    na = [p for p in combinations(range(len(g.edges)), 2) if not g.adjacent(*p)]
    return [(p, q) for p in na for q in na if not set(p) & set(q)]


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(6)), st.data())
def test_automorphism_invariance(ham6, perm, data):
    g = ham6.graph
    (a, b), (e, f) = data.draw(st.sampled_from(_quads(g)))
    relabeled = CycleFamily.from_vertex_lists(g, [[perm[v] for v in c.vertices] for c in ham6])
    img = lambda k: tuple(perm[v] for v in g.edges[k])  # noqa: E731
    assert abs(nu2(ham6, a, b, e, f)) == abs(nu2(relabeled, img(a), img(b), img(e), img(f)))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_orientation_flip_and_symmetry(ham6, data):
    g = ham6.graph
    (a, b), (e, f) = data.draw(st.sampled_from(_quads(g)))
    val = nu2(ham6, a, b, e, f)
    u, v = g.edges[e]
    assert nu2(ham6, a, b, (v, u), f) == -val
    assert abs(nu2(ham6, a, b, f, e)) == abs(val)
    assert abs(nu2(ham6, b, a, e, f)) == abs(val)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_nu1_orientation_flip(ham6, data):
    g = ham6.graph
    a = data.draw(st.sampled_from(range(len(g.edges))))
    b = data.draw(st.sampled_from([k for k in range(len(g.edges)) if k != a and g.adjacent(a, k)]))
    e = data.draw(st.sampled_from([k for k in range(len(g.edges)) if k not in (a, b)]))
    u, v = g.edges[e]
    assert nu1(ham6, a, b, (v, u)) == -nu1(ham6, a, b, e)
    assert nu1(ham6, b, a, e) == -nu1(ham6, a, b, e)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_additivity_over_disjoint_union(ham6, data):
    g = ham6.graph
    cut = data.draw(st.integers(0, len(ham6)))
    left = CycleFamily(g, ham6.cycles[:cut])
    right = CycleFamily(g, ham6.cycles[cut:])
    (a, b), (e, f) = data.draw(st.sampled_from(_quads(g)))
    assert nu2(ham6, a, b, e, f) == nu2(left, a, b, e, f) + nu2(right, a, b, e, f)
    assert nu2(left + right, a, b, e, f) == nu2(ham6, a, b, e, f)
