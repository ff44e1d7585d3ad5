"""Acceptance criteria 1-12.

Each test prints one ``criterion N: PASS|FAIL`` line (collected again in
the terminal summary) and then asserts the exact outcome.
"""

import random
from fractions import Fraction

import pytest

import test_properties as props
from qcoact.classify import FAMILY_IDS, classify, compare, known_families
from qcoact.coaction import CoactionSpec, CoeffMatrix, coassociativity_residuals, table1_residuals, verify
from qcoact.hopf import check_fundamental_unitary, check_hopf_axioms
from qcoact.invariants import (canonical_map_witnesses, verify_appendix, verify_coinvariance, verify_s4,
                               verify_y_coinvariance)
from qcoact.ncpoly import critical_pairs, nonzero_pairs
from qcoact.presentations import misoriented_vs, preset_bl, preset_suq2, preset_vs
from qcoact.scalars import Scalar

RESULTS = []


def verdict(n, ok, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    print(line)
    RESULTS.append(line)
    assert ok, line


def test_criterion_01_presentation_identities():
    bad = []
    total = 0
    for pres in [preset_suq2(), preset_vs(1), preset_vs(2), preset_vs(3), preset_bl()]:
        for rel in pres.all_relations():
            total += 1
            if not pres.equal(rel.lhs, rel.rhs):
                bad.append(f"{pres.name}/{rel.id}")
    ids = {r.id for r in preset_bl().all_relations()}
    verdict(1, not bad and {"sphere", "sphere-alt"} <= ids, f"{total - len(bad)}/{total} relations")


def test_criterion_02_confluence():
    counts = {}
    for pres in [preset_suq2(), preset_vs(1), preset_vs(2), preset_vs(3), preset_bl()]:
        counts[pres.name] = len(nonzero_pairs(critical_pairs(pres, 5)))
    mis = len(nonzero_pairs(critical_pairs(misoriented_vs(3), 5)))
    ok = all(v == 0 for v in counts.values()) and mis > 0
    detail = " ".join(f"{k}={v}" for k, v in counts.items()) + f" misoriented={mis}"
    verdict(2, ok, "nonzero pairs " + detail)


def test_criterion_03_hopf():
    rep = check_hopf_axioms(samples=20)
    unit = check_fundamental_unitary()
    verdict(3, rep.ok and unit.ok, f"{len(rep.checks)} axiom checks, {len(unit.checks)} unitary checks")


def _random_spec(rng, pres):
    pool = [Scalar(), Scalar.const(1), -Scalar.q(), Scalar.w(), Scalar.t() * Scalar.w().conj(),
            Scalar.const(Fraction(1, 2)), Scalar.q(-1) * Scalar.w()]
    n = pres.ngens
    mats = {k: CoeffMatrix([[rng.choice(pool) for _ in range(n)] for _ in range(n)])
            for k in ("A", "Ap", "B", "Bp", "D", "Dp")}
    return CoactionSpec.counit_consistent(pres, name="random", **mats)


def test_criterion_04_table_rederivation():
    rng = random.Random(4)
    presets = [preset_vs(1), preset_vs(2), preset_vs(3), preset_bl()]
    specs = [_random_spec(rng, presets[i % 4]) for i in range(50)]
    specs += [known_families(name) for name in FAMILY_IDS]
    mismatches = 0
    for spec in specs:
        full = coassociativity_residuals(spec)
        table = table1_residuals(spec)
        assert len(full) == len(table) == 18
        mismatches += sum(1 for (l1, m1), (l2, m2) in zip(full, table) if l1 != l2 or m1 != m2)
    verdict(4, mismatches == 0, f"{len(specs)} specs x 18 residuals, {mismatches} mismatches")


def test_criterion_05_known_coactions():
    failed = {}
    for name in FAMILY_IDS:
        rep = verify(known_families(name))
        if not rep.ok:
            failed[name] = len(rep.failures())
    detail = "all verify" if not failed else "failing checks " + " ".join(f"{k}={v}" for k, v in failed.items())
    verdict(5, not failed, detail)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("t", [Fraction(3, 4), Fraction(1, 2)])
def test_criterion_06_no_go(m, t):
    res = classify("vs", m, t, t)
    ok = not res.families and not res.unresolved and res.audit_complete and not res.limit_hit
    verdict(6, ok, f"m={m} t=u={t}: {len(res.families)} families, {len(res.unresolved)} unresolved, "
                   f"audit {res.audit_covered}/{res.audit_total}")


def test_criterion_07_s3_classification():
    t = Fraction(3, 4)
    res = classify("vs", 1, t, t)
    rep = compare(res, ["vs3-one", "vs3-two", "vs3-three"])
    other = classify("vs", 1, t, Fraction(1, 2))
    ok = (len(res.families) == 3 and rep.ok and not res.unresolved
          and not other.unresolved and other.audit_complete)
    verdict(7, ok, f"p=q: {len(res.families)} families (compare failures {len(rep.failures())}); "
                   f"p!=q: {len(other.families)} families, {len(other.unresolved)} unresolved")


def test_criterion_08_quaternionic_classification():
    t = Fraction(3, 4)
    res = classify("bl", None, t, t, ansatz=True)
    rep = compare(res, ["bl-a", "bl-b"])
    ap_zero = all(f.spec["Ap"].is_zero() for f in res.families)
    diag = res.by_diagonal
    unsat = all(diag.get(k, {}).get("families", 1) == 0 for k in ("0101", "1010"))
    ok = len(res.families) == 2 and rep.ok and ap_zero and unsat and not res.unresolved
    verdict(8, ok, f"{len(res.families)} families, A'=0 on survivors {ap_zero}, "
                   f"(1,0,1,0)/(0,1,0,1) unsat {unsat}, compare failures {len(rep.failures())}")


def test_criterion_09_coinvariants():
    reps = [verify_coinvariance(known_families("bl-a")), verify_y_coinvariance(known_families("bl-b")),
            verify_s4()]
    n = sum(len(r.checks) for r in reps)
    verdict(9, all(r.ok for r in reps), f"{n} checks")


def test_criterion_10_appendix():
    rep = verify_appendix()
    decided = [r for r in rep.checks if r.status in ("pass", "fail", "unresolved")]
    verdict(10, rep.ok and len(decided) == 44, f"{sum(r.status == 'pass' for r in decided)}/{len(decided)} identities")


def test_criterion_11_canonical_witnesses():
    rep = canonical_map_witnesses(known_families("bl-a"))
    verdict(11, rep.ok and len(rep.checks) == 8, f"{len(rep.checks)} checks")


PROPERTY_TESTS = [
    props.test_scalar_ring_axioms, props.test_scalar_involution, props.test_scalar_monomial_inverse,
    props.test_rewriting_terminates_with_order_decrease_bl, props.test_normalize_idempotent_vs7,
    props.test_normalize_idempotent_suq2, props.test_adjoint_involution_and_antihomomorphism,
    props.test_adjoint_is_antilinear, props.test_adjoint_commutes_with_normalization,
    props.test_equal_congruence_suq2, props.test_equal_congruence_vs7,
]


def test_criterion_12_property_suites():
    assert props.LAWS.max_examples >= 100 and props.LAWS.derandomize
    failed = []
    for fn in PROPERTY_TESTS:
        try:
            fn()
        except Exception as exc:
            failed.append(f"{fn.__name__}: {type(exc).__name__}")
    verdict(12, not failed, f"{len(PROPERTY_TESTS) - len(failed)}/{len(PROPERTY_TESTS)} laws, "
                            f"{props.LAWS.max_examples} cases each")
