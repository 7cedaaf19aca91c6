import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khdet import (
    AbelianGroup,
    add_r1_kink,
    braid_closure,
    connected_sum,
    disjoint_union,
    hopf_cable,
    mirror,
)
from khdet.invariants import (
    branched_h1,
    determinant,
    format_jones,
    invariant_report,
    jones,
    jones_from_kh,
    kauffman_bracket,
    to_t_polynomial,
)
from khdet.khovanov import khovanov_homology
from khdet.polynomial import LaurentPolynomial
from oracles import jones_t_half

braid_words = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from([k, -k])), min_size=1, max_size=7),
        st.just(n),
    )
)


def _t(d):
    return to_t_polynomial(jones(d)).coeffs


def test_jones_against_state_sum_oracle(links):
    for d in links.values():
        assert _t(d) == jones_t_half(d.crossings, d.signs, d.unknotted_extras)


def test_jones_values(links):
    assert format_jones(jones(links["trefoil"])) == "-t^4 + t^3 + t"
    assert format_jones(jones(links["hopf"])) == "-t^(5/2) - t^(1/2)"
    assert format_jones(jones(links["figure-eight"])) == "t^2 - t + 1 - t^(-1) + t^(-2)"
    assert jones(links["unknot"]) == 1


def test_h_minus_one_minus_three_exact():
    assert _t(hopf_cable(-1, -3)) == {-23: -1, -21: 1, -13: -1, -9: -1}


def test_bracket_of_unknot_diagrams(links):
    assert kauffman_bracket(links["unknot"]) == 1
    curl = add_r1_kink(links["unknot"], None, 1)
    assert kauffman_bracket(curl) == LaurentPolynomial({3: -1}, "A")  # (-A^3)^w with w = +1


@given(braid_words)
@settings(max_examples=40, deadline=None)
def test_jones_matches_oracle_and_kh(wn):
    d = braid_closure(*wn)
    j = jones(d)
    assert to_t_polynomial(j).coeffs == jones_t_half(d.crossings, d.signs, d.unknotted_extras)
    assert jones_from_kh(khovanov_homology(d)) == j
    assert jones(mirror(d)) == j.substitute_power(-1)


@given(braid_words)
@settings(max_examples=40, deadline=None)
def test_determinant_routes_agree(wn):
    d = braid_closure(*wn)
    det = determinant(d)  # raises when the two routes disagree
    h1 = branched_h1(d)
    assert det == (h1.order or 0)


def test_determinants(links):
    assert {k: determinant(d) for k, d in links.items()} == {
        "unknot": 1,
        "unlink2": 0,
        "hopf": 2,
        "trefoil": 3,
        "left-trefoil": 3,
        "figure-eight": 5,
    }


@pytest.mark.parametrize(
    "m,n,group",
    [
        (1, 3, AbelianGroup(1)),
        (1, 1, AbelianGroup(1, (3,))),
        (3, 3, AbelianGroup(1, (5,))),
        (1, -3, AbelianGroup(1, (7,))),
        (0, 0, AbelianGroup(1, (2, 2))),
    ],
)
def test_branched_h1_of_hopf_cables(m, n, group):
    d = hopf_cable(m, n)
    assert branched_h1(d) == group
    assert determinant(d) == 0


def test_split_links_add_free_summands(links):
    u = disjoint_union(links["trefoil"], links["hopf"])
    assert branched_h1(u) == AbelianGroup(1, (6,))
    assert branched_h1(links["unlink2"]) == AbelianGroup(1)


@pytest.mark.parametrize(
    "a,b",
    [("trefoil", "trefoil"), ("trefoil", "figure-eight"), ("hopf", "trefoil"), ("figure-eight", "hopf"), ("hopf", "hopf")],
)
def test_connected_sum_multiplicative(links, a, b):
    s = connected_sum(links[a], 1, links[b], 1)
    assert jones(s) == jones(links[a]) * jones(links[b])
    assert determinant(s) == determinant(links[a]) * determinant(links[b])


def test_report(links):
    r = invariant_report(links["trefoil"])
    out = r.to_dict()
    assert out["determinant"] == 3 and out["branched_h1"]["display"] == "Z/3"
    assert out["kh_ranks"] == {"F2": 6, "Z": 4}
