import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gordian import diagram
from gordian import families as fam
from gordian.diagram import PDCode, PDError
from gordian.laurent import LaurentPoly, delta
from gordian.tangle import normalize
from strategies import atomic_families, tangles

FIVE_TWO = ((1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1), (9, 6, 10, 7), (7, 2, 8, 3))
HOPF = ((4, 1, 3, 2), (2, 3, 1, 4))


def naive_bracket(pd: PDCode) -> LaurentPoly:
    """Sum over states, loops counted as connected components of a graph on
    the crossing slots."""
    total = LaurentPoly.zero()
    d = delta()
    for state in itertools.product((0, 1), repeat=pd.n_crossings):
        g = nx.Graph()
        for c, x in enumerate(pd.crossings):
            g.add_nodes_from((c, s) for s in range(4))
            pairs = ((0, 1), (2, 3)) if state[c] == 0 else ((0, 3), (1, 2))
            g.add_edges_from(((c, i), (c, j)) for i, j in pairs)
        where = {}
        for c, x in enumerate(pd.crossings):
            for s, a in enumerate(x):
                where.setdefault(a, []).append((c, s))
        g.add_edges_from(tuple(v) for v in where.values())
        loops = nx.number_connected_components(g) + pd.free_loops
        a_count = state.count(0)
        total = total + LaurentPoly({a_count - (len(state) - a_count): 1}) * d ** (loops - 1)
    return total


def test_published_five_two_matches_twist_knot():
    pd = PDCode(FIVE_TWO)
    # the tabulated diagram is the mirror of our standard K(2,3)
    assert diagram.state_sum_bracket(pd) == fam.bracket(fam.Twist(2, 3)).mirror()
    assert diagram.component_count(pd) == 1
    assert diagram.writhe(pd) == -fam.standard_writhe(fam.Twist(2, 3)) == -5


@given(tangles(max_leaves=3), st.sampled_from("ND"))
def test_gray_code_matches_naive_recount(t, which):
    pd = diagram.synthesize_pd(t, which)
    if pd.n_crossings <= 8:
        assert diagram.state_sum_bracket(pd) == naive_bracket(pd)


def test_naive_recount_on_fixtures():
    for name in ("5_2", "7_3", "8_20"):
        pd = fam.fixture(name).pd
        assert diagram.state_sum_bracket(pd) == naive_bracket(pd)


def test_parallel_state_sum_agrees():
    pd = fam.synthesize(fam.Pretzel(3, 3, -3))
    assert diagram.state_sum_bracket(pd, workers=3) == diagram.state_sum_bracket(pd)


def test_crossing_bound():
    pd = fam.synthesize(fam.Torus(9))
    with pytest.raises(diagram.CrossingBoundError):
        diagram.state_sum_bracket(pd, bound=8)


def test_free_loops():
    assert diagram.state_sum_bracket(PDCode((), 1)) == 1
    assert diagram.state_sum_bracket(PDCode((), 3)) == delta() ** 2
    hopf_u = PDCode(HOPF, 1)
    assert diagram.state_sum_bracket(hopf_u) == diagram.state_sum_bracket(PDCode(HOPF)) * delta()
    assert diagram.component_count(hopf_u) == 3


@given(atomic_families)
def test_synthesized_writhe_matches_standard(f):
    assert diagram.writhe(fam.synthesize(f)) == fam.standard_writhe(f)


@given(atomic_families, st.data())
def test_kinks_leave_x_unchanged(f, data):
    pd = fam.synthesize(f)
    if not pd.crossings or pd.n_crossings > 10:
        return
    x = normalize(diagram.state_sum_bracket(pd), diagram.writhe(pd))
    for _ in range(2):
        arc = data.draw(st.sampled_from(pd.labels()))
        pd = diagram.insert_kink(pd, arc, data.draw(st.sampled_from([1, -1])))
    assert normalize(diagram.state_sum_bracket(pd), diagram.writhe(pd)) == x


@given(atomic_families)
def test_knot_writhe_independent_of_direction(f):
    pd = fam.synthesize(f)
    if pd.crossings and diagram.component_count(pd) == 1:
        assert diagram.writhe(diagram.reverse_component(pd, pd.labels()[0])) == diagram.writhe(pd)


def test_reversing_one_hopf_component_flips_writhe():
    pd = PDCode(HOPF)
    w = diagram.writhe(pd)
    assert abs(w) == 2
    assert diagram.writhe(diagram.reverse_component(pd, 1)) == -w


@given(atomic_families)
def test_mirror_pd(f):
    pd = fam.synthesize(f)
    if not pd.crossings:
        return
    m = diagram.mirror_pd(pd)
    assert diagram.writhe(m) == -diagram.writhe(pd)
    assert diagram.state_sum_bracket(m) == diagram.state_sum_bracket(pd).mirror()


@given(atomic_families)
def test_relabel_preserves_everything(f):
    pd = fam.synthesize(f)
    r = diagram.relabel(pd)
    assert diagram.writhe(r) == diagram.writhe(pd)
    assert diagram.component_count(r) == diagram.component_count(pd)
    assert diagram.state_sum_bracket(r) == diagram.state_sum_bracket(pd)


@given(atomic_families)
def test_pd_text_round_trip(f):
    pd = fam.synthesize(f)
    back = diagram.parse_pd(diagram.format_pd(pd, comment=str(f)))
    assert back == pd
    assert diagram.writhe(back) == diagram.writhe(pd)


def test_file_round_trip(tmp_path):
    pd = fam.synthesize(fam.Torus(4))
    path = tmp_path / "t4.pd"
    diagram.write_pd(pd, path, comment="T(2,4)")
    assert path.read_text().startswith("# T(2,4)\n")
    assert diagram.writhe(diagram.read_pd(path)) == 4


def test_connected_sum_and_union():
    a, b = fam.synthesize(fam.Torus(3)), fam.synthesize(fam.Twist(2, 2))
    s = diagram.connected_sum(a, b)
    ba, bb = diagram.state_sum_bracket(a), diagram.state_sum_bracket(b)
    assert diagram.state_sum_bracket(s) == ba * bb
    assert diagram.writhe(s) == diagram.writhe(a) + diagram.writhe(b)
    u = diagram.disjoint_union([a, b])
    assert diagram.state_sum_bracket(u) == ba * bb * delta()
    assert diagram.component_count(u) == 2


@pytest.mark.parametrize(
    "text",
    [
        "X 1 2 3",
        "X 1 2 3 4",
        "X 1 1 2 2\nX 2 3 3 4",
        "Q 1",
        "X 1 2 2 1\nO 7",
        "X 1 a 2 1",
    ],
)
def test_malformed_pd(text):
    with pytest.raises(PDError):
        diagram.parse_pd(text)


def test_override_must_follow_diagram():
    with pytest.raises(PDError):
        diagram.writhe(diagram.parse_pd("X 4 1 3 2\nX 2 3 1 4\nO 4,2"))


def test_empty_text_is_unknot():
    pd = diagram.parse_pd("# nothing\n")
    assert pd.free_loops == 1 and diagram.state_sum_bracket(pd) == 1
