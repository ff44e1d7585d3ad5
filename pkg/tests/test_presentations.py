import pytest

from qcoact import dsl
from qcoact.ncpoly import Element, word_star
from qcoact.presentations import (FIXTURES, load_fixture, parse_presentation,
                                  preset_bl, preset_suq2, preset_vs, print_presentation)


@pytest.mark.parametrize("pres", [preset_suq2(), preset_vs(1), preset_vs(2), preset_vs(3), preset_bl()],
                         ids=lambda p: p.name)
def test_displayed_relations_hold(pres):
    for rel in pres.all_relations():
        assert pres.equal(rel.lhs, rel.rhs), rel.id


def test_bl_has_both_sphere_forms():
    ids = {r.id for r in preset_bl().all_relations()}
    assert {"sphere", "sphere-alt"} <= ids


def test_su2_unitarity_relations(suq2):
    assert suq2.equal(suq2.element("a a* + b b*"), suq2.one())
    assert suq2.equal(suq2.element("a* a + q^2 b b*"), suq2.one())


def test_star_closed(vs7):
    for rule in vs7.rules:
        lhs = Element.word(vs7.ngens, word_star(rule.lhs))
        assert vs7.equal(lhs, rule.rhs.adjoint())


BUILTIN = {"suq2.qalg": preset_suq2, "vs3.qalg": lambda: preset_vs(1), "vs5.qalg": lambda: preset_vs(2),
           "vs7.qalg": lambda: preset_vs(3), "bl7.qalg": preset_bl}


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_match_builtins(name):
    assert load_fixture(name) == BUILTIN[name]()


def test_print_parse_round_trip():
    for pres in (preset_vs(3), preset_bl(), preset_suq2()):
        assert parse_presentation(print_presentation(pres)) == pres


def test_suq2_confluent(suq2):
    assert suq2.is_confluent()


def test_bl_not_confluent_but_decides_by_ideal(bl):
    assert not bl.is_confluent()
    holds, method, _ = bl.decide(bl.element("x0 x0*"), bl.element("x0 x0*"))
    assert holds and method == "rewrite"


@pytest.mark.parametrize("text, line", [
    ("algebra x\ngenerators a\nrelation a = a a\n", 3),
    ("algebra x\ngenerators a\nrelation a a = b\n", 3),
    ("algebra x\nparams r\ngenerators a\n", 2),
    ("junk\n", 1),
])
def test_dsl_errors(text, line):
    with pytest.raises(dsl.DSLError) as info:
        parse_presentation(text)
    assert info.value.line == line


def test_orientation_error_names_generator():
    with pytest.raises(dsl.DSLError, match="not orientable: a does"):
        parse_presentation("algebra x\ngenerators a\nrelation a = a a\n")
