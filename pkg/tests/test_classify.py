from fractions import Fraction

import pytest

from qcoact.classify import classify, compare, generate_constraints, known_families
from qcoact.presentations import preset_vs

T = Fraction(3, 4)


@pytest.fixture(scope="module")
def s3():
    return classify("vs", 1, T, T)


def test_constraints_are_w_free():
    system = generate_constraints(preset_vs(1))
    assert system.equations
    # C and C' are eliminated through the counit law
    assert len(system.unknowns) == 6 * 4


def test_s3_finds_two_verified_families(s3):
    assert len(s3.families) == 2
    assert not s3.unresolved and s3.audit_complete
    assert sorted(f.description for f in s3.families) == ["diag(A)=10", "diag(A)=11"]


def test_compare_matches_a_nonzero_families(s3):
    rep = compare(s3, ["vs3-one", "vs3-three"])
    assert rep.ok, [r.id for r in rep.failures()]


def test_compare_flags_missing_family(s3):
    rep = compare(s3, ["vs3-one", "vs3-two", "vs3-three"])
    missing = {r.id.split("/")[1] for r in rep.failures() if r.id.startswith("expected/")}
    assert missing == {"vs3-two"}
    assert rep.get("count").status == "fail"


def test_p_not_q_is_empty():
    res = classify("vs", 1, T, Fraction(1, 2))
    assert res.families == [] and not res.unresolved and res.audit_complete


def test_no_lemma_mode_agrees(s3):
    res = classify("vs", 1, T, T, lemmas=False)
    assert sorted(f.key() for f in res.families) == sorted(f.key() for f in s3.families)
    assert res.audit_complete


def test_node_cap_reports_limit():
    res = classify("vs", 1, T, T, nodes=5)
    assert res.limit_hit and not res.audit_complete


def test_result_json_schema(s3):
    data = s3.to_json()
    for key in ("preset", "m", "t", "u", "ansatz", "families", "unsat_branches", "nodes", "unresolved"):
        assert key in data
    assert all(set(f) >= {"id", "assignment"} for f in data["families"])


def test_known_family_omega_substitution():
    spec = known_families("vs3-one", 1)
    assert all(x.is_w_free() for row in spec["Dp"].rows for x in row)
