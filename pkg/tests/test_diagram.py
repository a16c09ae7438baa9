from fractions import Fraction
from itertools import combinations

import pytest

from k8knot.diagram import (
    GaussCode,
    InvalidGaussCode,
    knot_diagram,
    link_diagram,
    linking_number,
    zeta_prime,
)
from k8knot.embedding import Embedding
from k8knot.graph import Graph, complete_graph
from k8knot.harness import random_embedding
from k8knot.knot import conway
from k8knot.prng import XorShift64Star

TREFOIL = "O1+U2+O3+U1+O2+U3+"


def test_parse_and_format_round_trip():
    for text in [TREFOIL, "", "|", "O1-U2-|U1-O2-", "O10+U7-O7-U10+"]:
        assert str(GaussCode.parse(text)) == text


def test_parse_accepts_unicode_minus():
    assert str(GaussCode.parse("O1−U1−")) == "O1-U1-"


@pytest.mark.parametrize("bad", ["O1+U1-", "O1+O1+", "O1+", "O1+U2+O2+", "X1+U1+", "O1+U1+junk"])
def test_structural_validation(bad):
    with pytest.raises(InvalidGaussCode):
        GaussCode.parse(bad)


def test_trefoil_code_accepted():
    code = GaussCode.parse(TREFOIL)
    assert code.n_components == 1 and code.n_crossings == 3


def test_triangle_has_empty_code():
    emb, _ = random_embedding(3, 5, 100)
    cyc = emb.graph.cycle([0, 1, 2])
    assert str(knot_diagram(emb, cyc)) == ""


def test_moment_curve_cycle_is_unknotted():
    # points on (t, t^2, t^3) are in general position; the cycle in t-order
    emb = Embedding.from_coords([(t, t * t, t ** 3) for t in range(1, 9)]).validate()
    code = knot_diagram(emb, emb.graph.cycle(range(8)))
    assert len(code.components[0]) % 2 == 0
    assert conway(code).coefficients == (1,)


def test_knot_diagram_uses_only_cycle_edges(k8_embeddings, ham8):
    emb = k8_embeddings[0]
    for cyc in list(ham8)[:200]:
        code = knot_diagram(emb, cyc)
        code.validate()
        for cid in code.crossing_ids():
            c = emb.crossing(cid)
            assert cyc.contains(c.edge_lo, c.edge_hi)
        expected = sum(1 for c in emb.crossings if cyc.contains(c.edge_lo, c.edge_hi))
        assert code.n_crossings == expected


def _two_triangles(coords):
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    emb = Embedding.from_coords(coords, g).validate()
    return emb, g.cycle([0, 1, 2]), g.cycle([3, 4, 5])


HOPF = [
    (-3, -1, 0), (3, -1, 0), (0, 4, 0),
    (1, Fraction(1, 2), -3), (1, Fraction(1, 2), 3), (10, Fraction(1, 2), 1),
]


def test_far_apart_triangles_are_unlinked():
    emb, c1, c2 = _two_triangles([(0, 0, 0), (1, 0, 0), (0, 1, 0), (50, 50, 50), (51, 50, 50), (50, 52, 51)])
    code = link_diagram(emb, c1, c2)
    assert linking_number(code) == 0
    inter = [cid for cid in code.crossing_ids() if len({i for i, _ in code.locate(cid)}) == 2]
    assert inter == []


def test_hopf_triangles():
    emb, c1, c2 = _two_triangles(HOPF)
    code = link_diagram(emb, c1, c2)
    lk = linking_number(code)
    assert abs(lk) == 1
    zeta_sum = sum(
        zeta_prime(emb, (c1.vertices[i], c1.vertices[(i + 1) % 3]), (c2.vertices[j], c2.vertices[(j + 1) % 3]))
        for i in range(3) for j in range(3)
    )
    assert zeta_sum == lk
    assert conway(code).coefficients == (0, lk)


def test_link_diagram_needs_disjoint_cycles(k8_embeddings):
    emb = k8_embeddings[0]
    c = emb.graph.cycle([0, 1, 2])
    with pytest.raises(ValueError):
        link_diagram(emb, c, c)


def test_linking_number_of_codes():
    assert linking_number(GaussCode.parse("|")) == 0
    assert linking_number(GaussCode.parse("O1+U2+|U1+O2+")) == 1
    assert linking_number(GaussCode.parse("O1-U2-|U1-O2-")) == -1
    with pytest.raises(ValueError):
        linking_number(GaussCode.parse(TREFOIL))


def test_reversing_components():
    hopf = GaussCode.parse("O1+U2+|U1+O2+")
    assert linking_number(hopf.reversed_component(0)) == -1
    assert linking_number(hopf.reversed_component(0).reversed_component(1)) == 1


def test_zeta_prime_values():
    pts = [(0, 0, 0), (2, 2, 0), (0, 2, 1), (2, 0, 1)]
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    emb = Embedding.from_coords(pts, g)
    z = zeta_prime(emb, 0, 1)
    assert z in (Fraction(1, 2), Fraction(-1, 2), 0)
    assert zeta_prime(emb, 1, 0) == z
    far = Embedding.from_coords([(0, 0, 0), (1, 0, 0), (0, 50, 50), (1, 51, 50)], g)
    assert zeta_prime(far, 0, 1) == 0


def test_zeta_prime_positive_crossing_is_half():
    # top view: strands cross once; over strand (2,-2,0), under (2,2,0) -> +1
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    emb = Embedding.from_coords([(0, 0, 0), (2, 2, 0), (0, 2, 1), (2, 0, 1)], g)
    from k8knot.geometry import ProjectionDirection
    emb.__dict__["projection"] = ProjectionDirection((0, 0, 1))
    assert zeta_prime(emb, 0, 1) == Fraction(1, 2)
    assert zeta_prime(emb, (1, 0), 1) == Fraction(-1, 2)


def test_zeta_prime_rejects_adjacent_edges(k8_embeddings):
    emb = k8_embeddings[0]
    with pytest.raises(ValueError):
        zeta_prime(emb, (0, 1), (1, 2))


def _disjoint_cycle_pairs(graph, rng, count):
    pairs = []
    while len(pairs) < count:
        verts = list(range(8))
        for i in range(7, 0, -1):
            j = rng.randbelow(i + 1)
            verts[i], verts[j] = verts[j], verts[i]
        k = 3 + rng.randbelow(3)  # split 3+5, 4+4 or 5+3
        pairs.append((graph.cycle(verts[:k]), graph.cycle(verts[k:])))
    return pairs


def test_linking_number_equals_zeta_sum():
    rng = XorShift64Star(2024)
    checked = 0
    for seed in range(10):
        emb, _ = random_embedding(8, 100 + seed, 10_000)
        for c1, c2 in _disjoint_cycle_pairs(emb.graph, rng, 10):
            code = link_diagram(emb, c1, c2)
            oriented1 = [(c1.vertices[i], c1.vertices[(i + 1) % len(c1)]) for i in range(len(c1))]
            oriented2 = [(c2.vertices[i], c2.vertices[(i + 1) % len(c2)]) for i in range(len(c2))]
            total = sum(zeta_prime(emb, e, f) for e in oriented1 for f in oriented2)
            assert total.denominator == 1
            assert linking_number(code) == total
            assert linking_number(code.reversed_component(1)) == -total
            checked += 1
    assert checked == 100


def test_complete_graph_embedding_json_round_trip(tmp_path):
    emb = Embedding.from_dict({"n": 4, "coords": [[0, 0, 0], ["1/2", 3, 1], [2, [1, 3], 5], [7, 1, -2]]})
    assert emb.points[2].y == Fraction(1, 3)
    path = tmp_path / "emb.json"
    emb.dump(path)
    back = Embedding.load(path)
    assert back.points == emb.points and back.graph == complete_graph(4)
    assert back.hash == emb.hash
    with pytest.raises(ValueError):
        Embedding.from_dict({"n": 2, "coords": [[0.5, 0, 0], [1, 1, 1]]})


def test_explicit_edges_in_json():
    data = {"n": 4, "coords": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], "edges": [[0, 1], [2, 3]]}
    emb = Embedding.from_dict(data)
    assert emb.graph.edges == ((0, 1), (2, 3))
    assert Embedding.from_dict(emb.to_dict()).graph == emb.graph


def test_zeta_symmetry_on_many_pairs(k8_embeddings):
    g = k8_embeddings[0].graph
    pairs = [(a, b) for a, b in combinations(range(len(g.edges)), 2) if not g.adjacent(a, b)]
    for emb in k8_embeddings:
        for a, b in pairs:
            assert zeta_prime(emb, a, b) == zeta_prime(emb, b, a)
