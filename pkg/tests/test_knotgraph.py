import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gordian import families as fam
from gordian import invariants as inv
from gordian import knotgraph as kg
from gordian.knotgraph import CROSSING, H2, H2_LINKS, EdgeCertificate, FiniteGraph, QuotientSpec


def cycle(n):
    return FiniteGraph(list(range(n)), {(i, (i + 1) % n) for i in range(n)})


def path(n):
    return FiniteGraph(list(range(n)), {(i, i + 1) for i in range(n - 1)})


def from_nx(g):
    return FiniteGraph(list(g.nodes), set(g.edges))


def gromov_product_delta(g: FiniteGraph) -> Fraction:
    """Smallest delta with (x|y)_w >= min((x|z)_w, (y|z)_w) - delta for all
    points, by brute force over Gromov products."""
    d = dict(nx.all_pairs_shortest_path_length(g.to_networkx()))

    def gp(x, y, w):
        return Fraction(d[x][w] + d[y][w] - d[x][y], 2)

    best = Fraction(0)
    for x, y, z, w in itertools.product(g.vertices, repeat=4):
        best = max(best, min(gp(x, z, w), gp(y, z, w)) - gp(x, y, w))
    return best


connected_graphs = st.integers(2, 7).flatmap(
    lambda n: st.sets(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
        max_size=12,
    ).map(lambda es, n=n: FiniteGraph(list(range(n)), es | {(i, i + 1) for i in range(n - 1)}))
)


def test_c4_four_point_delta_is_one():
    assert kg.hyperbolicity_four_point(cycle(4)) == 1
    assert gromov_product_delta(cycle(4)) == 1


@given(connected_graphs)
def test_four_point_matches_gromov_products(g):
    assert kg.hyperbolicity_four_point(g) == gromov_product_delta(g)


@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_trees_are_zero_hyperbolic(n, rnd):
    t = from_nx(nx.random_labeled_tree(n, seed=rnd.randint(0, 10**6))) if n > 1 else path(1)
    assert kg.hyperbolicity_four_point(t) == 0
    assert kg.hyperbolicity_thin_triangle(t) == 0
    assert kg.structure_predicates(t)["is_tree"]


@given(connected_graphs)
def test_thin_triangle_at_most_half_diameter(g):
    assert kg.hyperbolicity_thin_triangle(g) <= Fraction(kg.diameter(g), 2)


def test_complete_graph_measures():
    k5 = from_nx(nx.complete_graph(5))
    assert kg.hyperbolicity_four_point(k5) == 0
    assert kg.hyperbolicity_thin_triangle(k5) == 0
    assert kg.structure_predicates(k5) == {
        "is_path": False, "is_complete": True, "is_tree": False, "diameter": 1
    }


def test_cycle_thin_triangle():
    assert kg.hyperbolicity_thin_triangle(cycle(6)) == 1
    assert kg.thin_triangle_bounds(cycle(6)) == (1, Fraction(3, 2))


def test_bounds_enforced():
    with pytest.raises(kg.HyperbolicityBoundError):
        kg.hyperbolicity_thin_triangle(path(13))
    with pytest.raises(kg.HyperbolicityBoundError):
        kg.hyperbolicity_four_point(path(6), vertex_bound=5)
    with pytest.raises(kg.HyperbolicityBoundError):
        kg.hyperbolicity_thin_triangle(from_nx(nx.hypercube_graph(3)), geodesic_cap=2)


def test_distances():
    g = FiniteGraph([0, 1, 2, 3], {(0, 1), (2, 3)})
    assert kg.graph_distance(g, 0, 1) == 1
    assert kg.graph_distance(g, 0, 3) == math.inf
    assert kg.diameter(g) == math.inf
    with pytest.raises(KeyError):
        kg.graph_distance(g, 0, 9)
    with pytest.raises(ValueError):
        kg.hyperbolicity_four_point(g)
    assert kg.diameter(path(1)) == 0


def test_graph_validation():
    with pytest.raises(ValueError):
        FiniteGraph([1, 2], {(1, 1)})
    with pytest.raises(ValueError):
        FiniteGraph([1, 2], {(1, 3)})
    assert FiniteGraph([2, 1], {(2, 1)}).sorted_edges() == [(1, 2)]


@pytest.mark.parametrize(
    "args",
    [
        ("flip", "span", "knots", (0, 3)),
        (CROSSING, "genus", "knots", (0, 3)),
        (CROSSING, "span", "links", (0, 3)),
        (H2_LINKS, "span", "knots", (0, 3)),
        (CROSSING, "span", "knots", (0, 1)),
        (CROSSING, "det", "knots", (1, 4)),
        (CROSSING, "beta", "knots", (0, 1)),
        (CROSSING, "span", "knots", ()),
    ],
)
def test_quotient_spec_validation(args):
    with pytest.raises(ValueError):
        QuotientSpec(*args)


def test_long_beta_edges_never_verify():
    for u, v in [(1, 3), (2, 5), (1, 8)]:
        left, right = fam.trefoil_sum(u - 1), fam.trefoil_sum(v - 1)
        c = EdgeCertificate(left, right, CROSSING, "x", (u, v), "beta")
        res = c.verify()
        assert not res.ok and res.beta_step == v - u


def test_certificate_rejects_links_for_knot_moves():
    c = EdgeCertificate(fam.Unknot(), fam.Torus(2), H2, "x", (0, 2), "span")
    assert not c.verify().ok
    assert EdgeCertificate(fam.Unknot(), fam.Torus(2), H2_LINKS, "x", (0, 2), "span").verify().ok


def test_seven_case_certificates_cover_every_pair():
    for m, n in itertools.combinations(range(13), 2):
        cands = kg.seven_case_candidates(m, n)
        good = [c for c in cands if c.verify().ok]
        assert good, (m, n)
        first = kg.seven_case_certificate(m, n)
        # only the even/even case with m = 4 needs its substitute
        assert first.verify().ok == (not (m == 4 and n % 2 == 0)), (m, n)
    with pytest.raises(ValueError):
        kg.seven_case_candidates(3, 3)


def test_sporadic_certificates_verify():
    for c in kg.sporadic_certificates():
        res = c.verify()
        assert res.ok, (c, res.reasons)
        assert res.values == c.expected


def test_window_soundness_and_determinism():
    spec = QuotientSpec(H2, "span", "knots", (0, 3, 4, 5, 6))
    w1 = kg.build_window(spec)
    w2 = kg.build_window(spec, workers=2)
    assert w1.to_json() == w2.to_json()
    for c in w1.certificates:
        assert c.verify().ok
        assert c.key() in w1.graph.edges
    assert len(w1.certificates) == len(w1.graph.edges)
    for c, v in w1.failed:
        assert not v.ok and v.reasons


def test_window_exports():
    w = kg.build_window(QuotientSpec(CROSSING, "beta", "knots", (1, 2, 3)))
    d = w.to_dict()
    assert list(d) == ["spec", "vertices", "edges", "certificates", "failed"]
    assert d["edges"] == [[1, 2], [2, 3]]
    dot = w.to_dot()
    assert dot.startswith('graph "crossing_change_beta_knots" {') and "tooltip=" in dot
    rows = w.to_csv().splitlines()
    assert rows[0] == "value,representative,components,span,det,beta"
    assert rows[1].startswith("1,unknot,1,0,1,1")


def test_beta_window_edges_are_consecutive():
    for move in (CROSSING, H2):
        w = kg.build_window(QuotientSpec(move, "beta", "knots", range(1, 6)))
        assert w.graph.sorted_edges() == [(1, 2), (2, 3), (3, 4), (4, 5)]
        assert all(inv.beta_step(c.left, c.right) == 1 for c in w.certificates)
