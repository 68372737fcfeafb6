import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import diagrams
from diagcat.diagram import NodePartition, compose, double_diagram_components, parse_diagram
from diagcat.family import Family, matchings
from diagcat.linkstate import (
    Constraint,
    LinkState,
    LinkStateError,
    delete_defect,
    enumerate_link_states,
    extract_link_states,
    juxtaposition_components,
    left_link_state,
    mirror_diagram,
    parse_link_state,
    reachable,
    reachable_bfs,
    right_link_state,
    sesqui_components,
    splice,
)

BR7_X = parse_diagram("L4-R6,L1-R5,L2-R1,L3-L7,L5-L6,R2-R3,R4-R7")
BR7_Y = parse_diagram("R1-R5,R4-R7,L1-L4,L2-L3,L5-R3,L7-R6,L6-R2")


@st.composite
def link_states(draw, n=None, max_n=7):
    if n is None:
        n = draw(st.integers(1, max_n))
    return right_link_state(draw(diagrams(n=n)))


def test_extract_link_states():
    x = parse_diagram("L1-L2,L3-R1,R2-R3", 3)
    left, right = extract_link_states(x)
    assert left == LinkState.make(3, [(1, 2)], [3])
    assert right == LinkState.make(3, [(2, 3)], [1])
    assert left_link_state(parse_diagram("L1-R2", 2)) == LinkState.make(2, [], [1], [2])


def test_splice_and_delete_examples():
    p = parse_link_state("1-4,d2,d3,d5")
    assert splice(p, 3, 2) == parse_link_state("1-4,2-3,d5")
    assert delete_defect(p, 5) == parse_link_state("1-4,d2,d3,x5")
    with pytest.raises(LinkStateError):
        splice(p, 1, 2)
    with pytest.raises(LinkStateError):
        delete_defect(p, 4)


@settings(max_examples=100, deadline=None)
@given(p=link_states(max_n=8), data=st.data())
def test_moves_commute(p, data):
    if p.defect_count < 4:
        return
    a, b, c, d = data.draw(st.permutations(p.defects))[:4]
    assert splice(splice(p, a, b), c, d) == splice(splice(p, c, d), a, b)
    assert delete_defect(splice(p, a, b), c) == splice(delete_defect(p, c), a, b)
    assert delete_defect(delete_defect(p, c), d) == delete_defect(delete_defect(p, d), c)


def test_reachable_examples():
    p = parse_link_state("d1,d2,d3,d4")
    assert reachable(p, parse_link_state("1-4,2-3"))
    assert reachable(p, parse_link_state("1-3,x2,d4"))
    assert not reachable(parse_link_state("1-2,d3,d4"), parse_link_state("1-3,2-4"))
    assert not reachable(parse_link_state("1-2,d3,x4"), parse_link_state("1-2,d3,d4"))
    assert reachable(p, p)


def test_reachable_matches_search_exhaustively():
    for n in range(1, 6):
        states = [s for i in range(n + 1) for s in enumerate_link_states(n, i)]
        for p, q in itertools.product(states, repeat=2):
            assert reachable(p, q) == reachable_bfs(p, q), (p, q)


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_product_right_state_is_reachable(data):
    n = data.draw(st.integers(1, 6))
    x, y = data.draw(diagrams(n=n)), data.draw(diagrams(n=n))
    assert reachable(right_link_state(y), right_link_state(compose(x, y).diagram))
    assert reachable(left_link_state(x), left_link_state(compose(x, y).diagram))


@settings(max_examples=100, deadline=None)
@given(p=link_states(), data=st.data())
def test_reachability_is_transitive_along_moves(p, data):
    q = p
    for _ in range(data.draw(st.integers(0, 3))):
        if not q.defects:
            break
        if q.defect_count >= 2 and data.draw(st.booleans()):
            i, j = data.draw(st.permutations(q.defects))[:2]
            q = splice(q, i, j)
        else:
            q = delete_defect(q, data.draw(st.sampled_from(q.defects)))
        assert reachable(p, q)


def test_enumerate_counts():
    assert len(enumerate_link_states(3, 1, Constraint.NO_MISSING)) == 3
    assert len(enumerate_link_states(3, 1, Constraint.PLANAR_NO_MISSING)) == 2
    assert len(enumerate_link_states(3, 1, Constraint.NO_CONNECTIONS)) == 3
    # partial matchings on 2 nodes: {}, {a-b}; defect choices C(3,1)
    assert len(enumerate_link_states(3, 1)) == 3 * 2
    with pytest.raises(LinkStateError):
        enumerate_link_states(3, 4)


def test_enumerate_matches_diagram_right_states():
    for n in range(1, 5):
        for fam, cons in (
            (Family.ROOK_BRAUER, Constraint.ANY),
            (Family.BRAUER, Constraint.NO_MISSING),
            (Family.TEMPERLEY_LIEB, Constraint.PLANAR_NO_MISSING),
        ):
            seen = {right_link_state(d) for d in matchings(fam, n)}
            listed = {p for i in range(n + 1) for p in enumerate_link_states(n, i, cons)}
            assert seen == listed


def test_enumerate_is_sorted_and_unique():
    out = enumerate_link_states(6, 2)
    assert out == sorted(set(out))


def test_sesqui_components_example():
    p = right_link_state(BR7_X)
    assert p == parse_link_state("2-3,4-7,d1,d5,d6")
    parts = sesqui_components(p, BR7_Y)
    expected = NodePartition.from_groups(
        [
            [("m", 1), ("m", 4), ("m", 7), ("r", 6)],
            [("m", 2), ("m", 3)],
            [("m", 5), ("r", 3)],
            [("m", 6), ("r", 2)],
            [("r", 1), ("r", 5)],
            [("r", 4), ("r", 7)],
        ]
    )
    assert parts == expected
    assert double_diagram_components(BR7_X, BR7_Y).restrict("mr") == expected


@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_sesqui_is_restricted_double_diagram(data):
    n = data.draw(st.integers(1, 6))
    x, y = data.draw(diagrams(n=n)), data.draw(diagrams(n=n))
    assert sesqui_components(right_link_state(x), y) == double_diagram_components(x, y).restrict("mr")


def test_mirror_diagram_example():
    p = parse_link_state("1-4,d2,d3,d5")
    dp = mirror_diagram(p)
    assert dp == parse_diagram("L1-L4,R1-R4,L2-R2,L3-R3,L5-R5")
    assert extract_link_states(dp) == (p, p)
    y = parse_diagram("L1-R2,L2-L3,L4-L5,R1-R4,R3-R5")
    assert compose(y, dp) == (y, 1, 0)
    with pytest.raises(LinkStateError):
        mirror_diagram(parse_link_state("1-2,x3"))


def test_mirror_diagram_squares_with_loops():
    for n in range(1, 7):
        for i in range(n % 2, n + 1, 2):
            for p in enumerate_link_states(n, i, Constraint.NO_MISSING):
                d = mirror_diagram(p)
                assert compose(d, d) == (d, len(p.connections), 0)


def test_planarity_flags():
    assert parse_link_state("1-4,2-3,d5").is_planar()
    assert not parse_link_state("1-3,2-4").is_planar()
    assert not parse_link_state("1-3,d2,d4").is_planar()
    assert not parse_link_state("1-2,x3").is_planar()
    assert parse_link_state("1-2,x3").is_weakly_planar()


def test_juxtaposition_components():
    p = parse_link_state("1-2,3-4")
    assert juxtaposition_components(p, parse_link_state("2-3,d1,d4")) == [[1, 2, 3, 4]]
    assert juxtaposition_components(p, parse_link_state("1-2,d3,d4")) == [[1, 2], [3, 4]]


def test_validation_and_round_trips():
    with pytest.raises(LinkStateError):
        LinkState(3, ((1, 2),), (), ())
    with pytest.raises(LinkStateError):
        LinkState(3, ((2, 1),), (3,), ())
    p = parse_link_state("1-4,d2,x3", 4)
    assert LinkState.from_json(json.loads(json.dumps(p.to_json()))) == p
    assert parse_link_state(json.dumps(p.to_json())) == p
    assert parse_link_state(p.to_text()) == p
    assert str(p) == "[4: 1-4,d2,x3]"
