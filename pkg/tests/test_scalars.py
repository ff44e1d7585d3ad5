from fractions import Fraction

import pytest

from qcoact.scalars import GaussRational, Scalar, ScalarSyntaxError, parse_gauss, parse_scalar, scalar_divexact


def test_gauss_arithmetic():
    z = GaussRational(Fraction(3, 5), Fraction(4, 5))
    assert z.abs2() == 1
    assert z * z.conj() == GaussRational(1)
    assert z * z.inverse() == GaussRational(1)
    assert GaussRational(0, 1) ** 2 == GaussRational(-1)


def test_q_is_t_squared():
    assert Scalar.q() == Scalar.t() ** 2
    assert Scalar.q(-1) * Scalar.q() == Scalar.const(1)
    assert Scalar.p() == Scalar.u() ** 2


def test_w_is_unit_under_conj():
    w = Scalar.w()
    assert w * w.conj() == Scalar.const(1)
    assert (Scalar.const(GaussRational(0, 1)) * w).conj() == Scalar.const(GaussRational(0, -1)) * w.conj()


def test_t_and_u_are_real():
    assert Scalar.t().conj() == Scalar.t()
    assert Scalar.u().conj() == Scalar.u()


@pytest.mark.parametrize("text, expected", [
    ("q^2", Scalar.q(2)),
    ("sqrt(q)^-1", Scalar.t() ** -1),
    ("-(1-q^2)*sqrt(q)^-1", -(Scalar.const(1) - Scalar.q(2)) * Scalar.t() ** -1),
    ("2 i w", Scalar.const(GaussRational(0, 2)) * Scalar.w()),
    ("p q", Scalar.p() * Scalar.q()),
])
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


def test_parse_round_trips_through_str():
    s = parse_scalar("3/5 + 4/5 i w - q^-2 sqrt(p)")
    assert parse_scalar(str(s)) == s


def test_parse_gauss():
    assert parse_gauss("3/5+4/5i") == GaussRational(Fraction(3, 5), Fraction(4, 5))
    assert parse_gauss("i") == GaussRational(0, 1)
    assert parse_gauss("1") == GaussRational(1)


@pytest.mark.parametrize("bad", ["q^^2", "sqrt(w)", "(q", "q^1/2", "z"])
def test_parse_errors_carry_position(bad):
    with pytest.raises(ScalarSyntaxError) as info:
        parse_scalar(bad)
    assert info.value.col >= 1


def test_eval_and_partial_eval():
    s = parse_scalar("q - w sqrt(p)")
    z = GaussRational(0, 1)
    assert s.eval(Fraction(1, 2), Fraction(1, 3), z) == GaussRational(Fraction(1, 4), Fraction(-1, 3))
    assert s.eval_tu(Fraction(1, 2), Fraction(1, 3)) == parse_scalar("1/4 - 1/3 w")
    with pytest.raises(ValueError):
        s.eval(1, 1, GaussRational(2))


def test_divexact():
    a = Scalar.const(1) - Scalar.q(2)
    assert scalar_divexact(a * Scalar.t(), Scalar.t()) == a
    assert scalar_divexact(Scalar.const(1), a) is None
