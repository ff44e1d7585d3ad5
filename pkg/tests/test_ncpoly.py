import pytest

from qcoact.ncpoly import (Element, FuelExhausted, Letter, RewriteRule, TermOrder, adjoint,
                           critical_pairs, nonzero_pairs, normalize)
from qcoact.presentations import Presentation, misoriented_vs
from qcoact.scalars import Scalar

X, XS, Y = Letter(0, False), Letter(0, True), Letter(1, False)


def test_word_products_concatenate():
    a = Element.gen(2, 0)
    b = Element.gen(2, 1)
    assert (a * b).terms == {(X, Y): Scalar.const(1)}
    assert (a * b - b * a).degree() == 2


def test_adjoint_reverses_and_stars():
    e = Element.word(2, (X, Y), Scalar.w())
    assert adjoint(e).terms == {(Letter(1, True), XS): Scalar.w().conj()}


def test_term_order_degree_first():
    order = TermOrder.standard(2)
    assert order.less((X,), (Y, Y))
    assert order.leading(Element.gen(2, 0) + Element.word(2, (Y, X))) == (Y, X)


def test_normalize_with_commutation_rule():
    # y x -> q x y
    rule = RewriteRule((Y, X), Element.word(2, (X, Y), Scalar.q()))
    pres = Presentation("toy", ["x", "y"], ["q"], [rule])
    e = Element.word(2, (Y, Y, X))
    assert normalize(e, pres).terms == {(X, Y, Y): Scalar.q(2)}


def test_fuel_exhaustion():
    rule = RewriteRule((Y, X), Element.word(2, (X, Y), Scalar.q()))
    pres = Presentation("toy", ["x", "y"], ["q"], [rule])
    with pytest.raises(FuelExhausted):
        normalize(Element.word(2, (Y, Y, Y, X, X, X)), pres, fuel=3)


def test_confluent_toy_has_no_bad_pairs():
    rule = RewriteRule((Y, X), Element.word(2, (X, Y), Scalar.q()))
    pres = Presentation("toy", ["x", "y"], ["q"], [rule])
    assert nonzero_pairs(critical_pairs(pres, 4)) == []


def test_misoriented_fixture_is_not_confluent():
    assert nonzero_pairs(critical_pairs(misoriented_vs(3), 5))
