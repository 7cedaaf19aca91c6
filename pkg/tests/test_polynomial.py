import pytest

from khdet.polynomial import LaurentPolynomial as P
from khdet.polynomial import cyclotomic_part, cyclotomic_polynomial, totient, two_term_shape


def test_arithmetic_and_inverse_powers():
    x = P({1: 1})
    assert (x + 1) ** 2 == P({2: 1, 1: 2, 0: 1})
    assert (x * -1) ** -3 == P({-3: -1})
    with pytest.raises(ValueError):
        (x + 1) ** -1


def test_exact_division():
    q = P({1: 1, -1: 1})
    assert (q * P({5: 2, 0: -1})).exact_div(q) == P({5: 2, 0: -1})
    with pytest.raises(ArithmeticError):
        P({0: 1}).exact_div(q)


def test_eval_at_i():
    assert P({0: 1, 1: 1}).eval_at_i() == (1, 1)
    assert P({2: 1, -1: 3}).eval_at_i() == (-1, -3)


@pytest.mark.parametrize("d,coeffs", [(1, [-1, 1]), (2, [1, 1]), (6, [1, -1, 1]), (12, [1, 0, -1, 0, 1])])
def test_cyclotomic_polynomials(d, coeffs):
    assert cyclotomic_polynomial(d) == P.from_list(coeffs, var="x")


def test_totient():
    assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]


def test_cyclotomic_part_f():
    f = P({7: 1, 5: 1, 1: -1, 0: 1}, "t")
    split = cyclotomic_part(f)
    assert dict(split.factors) == {2: 1}
    assert split.remainder == P.from_list([1, -2, 2, -2, 2, -1, 1], var="t")
    assert split.unit * split.cyclotomic * split.remainder == f
    assert not cyclotomic_part(split.remainder).factors


def test_cyclotomic_part_multiplicity_and_unit():
    p = P({1: 1, 0: 1}) ** 3 * P({2: 1, 1: 1, 0: 1}) * P({-4: -1})
    split = cyclotomic_part(p)
    assert dict(split.factors) == {2: 3, 3: 1}
    assert split.unit_sign == -1 and split.unit_shift == -4 and split.remainder == 1


def test_two_term_shape():
    assert two_term_shape(P({3: 1, -2: -1}))
    assert not two_term_shape(P({3: 1, -2: 1}))
    assert not two_term_shape(P({-23: -1, -21: 1, -13: -1, -9: -1}))


def test_format_halves():
    assert P({-23: -1, 2: 1, 0: 3}, "t").format(halves=True) == "t + 3 - t^(-23/2)"
