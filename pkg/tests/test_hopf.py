from qcoact.hopf import H, antipode, check_fundamental_unitary, check_hopf_axioms, coproduct, counit, tensor
from qcoact.scalars import Scalar


def test_coproduct_of_a():
    h = H()
    a, b = h.element("a"), h.element("b")
    expected = tensor(a, a, slots=(h, h)) - tensor(b, h.element("b*"), slots=(h, h)).scale(Scalar.q())
    assert coproduct(a) == expected


def test_counit_and_antipode_on_generators():
    h = H()
    assert counit(h.element("a")) == Scalar.const(1)
    assert counit(h.element("b")).is_zero()
    assert h.equal(antipode(h.element("a")), h.element("a*"))
    assert h.equal(antipode(h.element("b")), h.element("b").scale(-Scalar.q()))


def test_axiom_suite_passes():
    rep = check_hopf_axioms(samples=8)
    assert rep.ok, [r.id for r in rep.failures()]
    assert len(rep.checks) > 50


def test_fundamental_unitary():
    rep = check_fundamental_unitary()
    assert rep.ok and len(rep.checks) >= 12
