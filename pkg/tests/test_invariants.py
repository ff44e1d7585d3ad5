from qcoact.classify import known_families
from qcoact.invariants import (canonical_map_witnesses, coinvariant_residual, equivalent_x0_forms,
                               invariant_set, verify_appendix, verify_coinvariance, verify_s4,
                               verify_y_coinvariance, y_probe)
from qcoact.ncpoly import adjoint
from qcoact.presentations import preset_bl


def test_generator_is_not_coinvariant():
    bl = preset_bl()
    assert not coinvariant_residual(known_families("bl-a"), bl.element("x0")).is_zero()


def test_self_adjoint_invariants():
    inv = invariant_set()
    bl = preset_bl()
    assert bl.equal(adjoint(inv["X0"]), inv["X0"])
    assert bl.equal(adjoint(inv["Y0"]), inv["Y0"])
    assert bl.equal(adjoint(inv["X1"]), inv["X1*"])


def test_x_coinvariance_symbolic_omega():
    assert verify_coinvariance(known_families("bl-a")).ok


def test_y_coinvariance_symbolic_omega():
    assert verify_y_coinvariance(known_families("bl-b")).ok


def test_s4_and_forms():
    assert verify_s4().ok
    assert equivalent_x0_forms().ok


def test_appendix_counts():
    rep = verify_appendix()
    assert rep.ok
    decided = [r for r in rep.checks if r.status == "pass"]
    assert len(decided) == 44


def test_canonical_witnesses():
    rep = canonical_map_witnesses(known_families("bl-a"))
    assert rep.ok and len(rep.checks) == 8


def test_y_probe_control():
    probe = y_probe()
    assert probe["rank"] == probe["products"]
    control = y_probe(gens=("X0", "X1", "X1*", "X2", "X2*"))
    assert control["dependencies"]
