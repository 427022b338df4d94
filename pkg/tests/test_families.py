import pytest
from hypothesis import given

from gordian import diagram
from gordian import families as fam
from gordian.families import (
    ConnectedSum,
    DisjointUnion,
    FamilySyntaxError,
    Kq,
    Kqr,
    Pretzel,
    Torus,
    Twist,
    Unknot,
    Unlink,
    parse_family,
)
from gordian.laurent import delta
from strategies import atomic_families

R7 = range(-7, 8)
ODD_Q = range(1, 8, 2)


def grid():
    yield from (Torus(n) for n in R7)
    yield from (Twist(m, n) for m in R7 for n in R7)
    yield from (Pretzel(p, q, r) for p in R7 for q in R7 for r in R7)
    yield from (Kq(q) for q in ODD_Q)
    yield from (Kqr(q, r) for q in ODD_Q for r in range(3, 8, 2))
    yield from (Unlink(k) for k in range(2, 5))


def test_component_count_matches_traversal():
    for f in grid():
        assert fam.component_count(f) == diagram.component_count(fam.synthesize(f)), f


@given(atomic_families)
def test_bracket_matches_state_sum(f):
    pd = fam.synthesize(f)
    if pd.n_crossings <= 14:
        assert fam.bracket(f) == diagram.state_sum_bracket(pd)


@given(atomic_families)
def test_unknot_is_unit_for_sum(f):
    assert fam.bracket(ConnectedSum((f, Unknot()))) == fam.bracket(f)
    assert fam.bracket(DisjointUnion((f, Unknot()))) == delta() * fam.bracket(f)
    assert fam.component_count(DisjointUnion((f, Unknot()))) == fam.component_count(f) + 1


@given(atomic_families, atomic_families)
def test_composite_brackets_match_state_sum(f, g):
    for h in (ConnectedSum((f, g)), DisjointUnion((f, g))):
        pd = fam.synthesize(h)
        if pd.n_crossings <= 12:
            assert fam.bracket(h) == diagram.state_sum_bracket(pd)
            assert fam.standard_writhe(h) == diagram.writhe(pd)
            assert fam.component_count(h) == diagram.component_count(pd)


@given(atomic_families)
def test_mirror_mirrors_bracket(f):
    if isinstance(f, (Kq, Kqr)):
        return
    assert fam.bracket(fam.mirror(f)) == fam.bracket(f).mirror()
    # for links the relative orientation is a convention and may flip
    if fam.is_knot(f):
        assert fam.standard_writhe(fam.mirror(f)) == -fam.standard_writhe(f)


def test_small_identifications():
    assert fam.bracket(Torus(0)) == fam.bracket(Unlink(2))
    assert fam.bracket(Torus(1)).span() == 0
    assert fam.component_count(Twist(3, 3)) == 2
    assert fam.is_knot(Kqr(3, 3))
    assert fam.trefoil_sum(0) == Unknot()
    assert fam.trefoil_sum(3) == ConnectedSum((Torus(3),) * 3)


@pytest.mark.parametrize(
    "ctor, args",
    [(Unlink, (1,)), (Kq, (2,)), (Kq, (-1,)), (Kqr, (3, 1)), (Kqr, (2, 3)),
     (ConnectedSum, ((),)), (DisjointUnion, ((),))],
)
def test_constructor_validation(ctor, args):
    with pytest.raises(ValueError):
        ctor(*args)


@given(atomic_families, atomic_families)
def test_parse_round_trip(f, g):
    for h in (f, ConnectedSum((f, g)), DisjointUnion((f, ConnectedSum((g, f))))):
        assert parse_family(str(h)) == h


def test_parse_whitespace_and_nesting():
    assert parse_family(" sum( torus:3 , twist:2, 3 ) ") == ConnectedSum((Torus(3), Twist(2, 3)))
    assert parse_family("sqcup(unknot,unlink:2)") == DisjointUnion((Unknot(), Unlink(2)))


@pytest.mark.parametrize(
    "text, pos",
    [
        ("torus", 5),
        ("torus:", 6),
        ("twist:2", 6),
        ("blob:3", 0),
        ("sum(torus:3", 11),
        ("torus:3 x", 8),
        ("kq:2", 0),
        ("pd:", 3),
        ("", 0),
    ],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(FamilySyntaxError) as info:
        parse_family(text)
    assert info.value.pos == pos


def test_fixtures_load():
    for name in fam.FIXTURE_NAMES:
        f = fam.fixture(name)
        assert f.name == name and fam.is_knot(f)
        assert fam.fixture_path(name + ".pd") == fam.fixture_path(name)
    with pytest.raises(FileNotFoundError):
        fam.fixture("3_1")


def test_pd_spec_resolves_packaged_fixture():
    f = parse_family("pd:fixtures/8_20.pd")
    assert fam.bracket(f) == diagram.state_sum_bracket(fam.fixture("8_20").pd)


def test_parametric_fixtures_match_their_families():
    pairs = {
        "7_3": Twist(4, 3),
        "8_19": Pretzel(3, 3, -2),
        "8_20": Pretzel(3, -3, 2),
        "10_124": Pretzel(5, 3, -2),
        "10_126": Pretzel(-5, 3, 2),
    }
    for name, f in pairs.items():
        assert fam.bracket(fam.fixture(name)) == fam.bracket(f)
