import json
import random

import pytest

from qcoact.classify import known_families
from qcoact.coaction import (CoactionSpec, CoeffMatrix, coassociativity_residuals, psi_apply, spec_from_json,
                             spec_to_json, table1_residuals, verify)
from qcoact.hopf import tensor
from qcoact.presentations import preset_bl, preset_vs
from qcoact.scalars import GaussRational, Scalar

W = Scalar.w()
Q = Scalar.q()


PRESETS = [preset_vs(1), preset_vs(2), preset_vs(3), preset_bl()]


def random_spec(rng, pres):
    # the closed-form table presumes the counit law, so C and C' are derived
    pool = [Scalar(), Scalar.const(1), -Q, W, Scalar.t() * W.conj(), Scalar.const(2)]
    n = pres.ngens
    mats = {k: CoeffMatrix([[rng.choice(pool) for _ in range(n)] for _ in range(n)])
            for k in ("A", "Ap", "B", "Bp", "D", "Dp")}
    return CoactionSpec.counit_consistent(pres, name="random", **mats)


def test_counit_consistent_fills_c():
    pres = preset_vs(1)
    spec = CoactionSpec.counit_consistent(pres, A=CoeffMatrix.diag([1, 0]))
    assert spec["C"] == CoeffMatrix.diag([0, 1])
    assert spec["Cp"].is_zero()


def test_psi_on_generator_vs3_one():
    spec = known_families("vs3-one")
    pres, h = spec.slots
    got = psi_apply(spec, pres.element("z1"))
    want = tensor(pres.element("z1"), h.element("a"), slots=spec.slots) \
        + tensor(pres.element("z0*"), h.element("b*"), slots=spec.slots).scale(W)
    assert got == want


def test_printed_vs3_one_sign_is_not_a_coaction():
    # as displayed: both swap entries carry a minus sign
    pres = preset_vs(1, p_is_q=True)
    printed = CoactionSpec.counit_consistent(
        pres, A=CoeffMatrix.identity(2), Dp=CoeffMatrix.sparse(2, {(0, 1): -W * Q, (1, 0): -W}))
    rep = verify(printed)
    assert not rep.ok
    assert any(r.id.startswith("homomorphism") for r in rep.failures())


@pytest.mark.parametrize("name", ["coproduct", "vs3-one", "vs3-three", "bl-a"])
def test_families_verify(name):
    rep = verify(known_families(name))
    assert rep.ok, [r.id for r in rep.failures()]


@pytest.mark.parametrize("name", ["vs3-two", "bl-b"])
def test_a_zero_families_fail_homomorphism(name):
    rep = verify(known_families(name))
    fails = rep.failures()
    assert fails and all(r.id.startswith("homomorphism") for r in fails)


def test_table_agrees_on_random_specs():
    rng = random.Random(11)
    for i in range(12):
        spec = random_spec(rng, PRESETS[i % 4])
        for (l1, m1), (l2, m2) in zip(coassociativity_residuals(spec), table1_residuals(spec)):
            assert l1 == l2 and m1 == m2


def test_verify_at_point():
    spec = known_families("bl-a", GaussRational(0, 1))
    assert verify(spec, point=(3, 2)).ok


def test_json_round_trip():
    spec = known_families("vs3-three")
    data = json.loads(json.dumps(spec_to_json(spec)))
    back = spec_from_json(data)
    assert back == spec
