import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khdet.diagram import (
    DiagramError,
    PDSyntaxError,
    add_r1_kink,
    braid_closure,
    checkerboard,
    connected_pieces,
    connected_sum,
    disjoint_union,
    faces,
    goeritz_matrix,
    hopf_cable,
    mirror,
    parse_pd,
    serialize_pd,
)
from oracles import braid_permutation_cycles

braid_words = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from([k, -k])), min_size=1, max_size=6),
        st.just(n),
    )
)


def test_parse_round_trip(links):
    for d in links.values():
        assert parse_pd(serialize_pd(d)) == d


def test_parse_tolerates_spacing_and_brackets():
    a = parse_pd(" PD[ X[1, 4, 2, 5], X(3,6,4,1) ,X(5,2,6,3) ] ")
    assert a.n_crossings == 3 and a.n_components == 1


def test_left_trefoil_signs(links):
    assert links["left-trefoil"].signs == (-1, -1, -1)
    assert links["trefoil"].signs == (1, 1, 1)


def test_nonplanar_code_rejected():
    # three one-crossing components: edge labels check out but no planar embedding exists
    with pytest.raises(DiagramError, match="not planar"):
        parse_pd("PD[X(1,4,2,3),X(3,6,4,5),X(5,2,6,1)]")


@pytest.mark.parametrize(
    "text",
    ["PD[X(1,2,3)]", "PD[X(1,1,2,2),X(3,4,5,6)]", "PD[X(1,2,3,4)", "X(1,2,3,4)", "PD[]", "PD[] + 0", "PD[X(0,1,2,3)]"],
)
def test_malformed_codes(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_syntax_error_position():
    with pytest.raises(PDSyntaxError) as info:
        parse_pd("PD[X(1,2;3,4)]")
    assert info.value.position == 8


def test_unknotted_circles():
    d = parse_pd("PD[] + 2")
    assert d.n_crossings == 0 and d.n_components == 2


def test_each_edge_twice(links):
    for d in links.values():
        labels = [e for x in d.crossings for e in x]
        assert sorted(labels) == sorted(list(d.edges) * 2)


@given(braid_words)
@settings(max_examples=60, deadline=None)
def test_braid_components_match_permutation(wn):
    word, n = wn
    d = braid_closure(word, n)
    assert d.n_components == braid_permutation_cycles(word, n)
    assert d.writhe == sum(1 if x > 0 else -1 for x in word)


@given(braid_words)
@settings(max_examples=60, deadline=None)
def test_mirror_is_involution(wn):
    d = braid_closure(*wn)
    m = mirror(d)
    assert m.signs == tuple(-s for s in d.signs)
    assert mirror(m) == d


@given(braid_words)
@settings(max_examples=60, deadline=None)
def test_checkerboard_is_proper(wn):
    d = braid_closure(*wn)
    pieces, _ = connected_pieces(d)
    for p in pieces:
        cb = checkerboard(p)
        assert len(cb.faces) == p.n_crossings + 2
        shaded = {corner: flag for corners, flag in cb.faces for corner in corners}
        assert not cb.faces[0][1]  # the outer region is white
        for c in range(p.n_crossings):
            colours = [shaded[(c, k)] for k in range(4)]
            assert colours[0] != colours[1] and colours[0] == colours[2] and colours[1] == colours[3]
        g = goeritz_matrix(p)
        assert g == g.T


def test_face_count(links):
    assert len(faces(links["figure-eight"].crossings)) == 6


def test_hopf_cable_shape():
    d = hopf_cable(1, 3)
    assert d.n_crossings == 12 and d.n_components == 2


@pytest.mark.parametrize("m,n", [(1, 3), (2, -1), (0, 2), (-3, 1)])
def test_hopf_cable_negation_is_mirror(m, n):
    a, b = hopf_cable(-m, -n), mirror(hopf_cable(m, n))
    assert sorted(a.signs) == sorted(b.signs)
    assert a.n_components == b.n_components


def test_disjoint_union_and_pieces(links):
    u = disjoint_union(links["hopf"], disjoint_union(links["trefoil"], links["unknot"]))
    assert u.n_components == 4
    pieces, extras = connected_pieces(u)
    assert sorted(p.n_crossings for p in pieces) == [2, 3] and extras == 1


def test_connected_sum_counts(links):
    s = connected_sum(links["trefoil"], 1, links["figure-eight"], 2)
    assert s.n_crossings == 7 and s.n_components == 1
    assert s.writhe == links["trefoil"].writhe + links["figure-eight"].writhe


def test_r1_kink(links):
    k = add_r1_kink(links["trefoil"], 2, -1)
    assert k.n_crossings == 4 and k.writhe == 2
    curl = add_r1_kink(links["unknot"], None, 1)
    assert curl.n_crossings == 1 and curl.unknotted_extras == 0
    with pytest.raises(DiagramError):
        add_r1_kink(links["trefoil"], 99, 1)


def test_checkerboard_needs_connected_diagram(links):
    with pytest.raises(DiagramError):
        checkerboard(disjoint_union(links["hopf"], links["trefoil"]))
