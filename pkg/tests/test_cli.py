import json

import pytest

from qcoact.cli import main
from qcoact.scalars import parse_gauss


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_appendix_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "appendix")
    assert code == 0
    assert "44/" in out


def test_classify_m3_no_families(capsys):
    code, out, _ = run(capsys, "classify", "--preset", "vs", "--m", "3", "--t", "3/4", "--u", "3/4")
    assert code == 0
    assert "families: 0" in out


def test_verify_bl_a_at_omega(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "coaction", "--family", "bl-a", "--omega", "3/5+4/5i", "--json", str(path))
    assert code == 0
    text = path.read_text()
    data = json.loads(text)
    assert set(data) == {"suite", "params", "checks", "exit"}
    assert parse_gauss(data["params"]["omega"]) == parse_gauss("3/5+4/5i")
    assert set(data["checks"][0]) == {"id", "status", "residual_terms"}
    assert json.dumps(data, indent=2, sort_keys=True) + "\n" == text


def test_reports_are_reproducible(capsys, tmp_path):
    texts = []
    for k in range(2):
        path = tmp_path / f"s{k}.json"
        run(capsys, "verify", "s4", "--json", str(path))
        texts.append(path.read_text())
    assert texts[0] == texts[1]


def test_failing_suite_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "coaction", "--family", "vs3-two")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["classify", "--preset", "vs", "--m", "1"],
    ["classify", "--preset", "vs", "--t", "3/4", "--u", "3/4"],
    ["verify", "coaction", "--omega", "2"],
    ["verify", "coaction", "--t", "x"],
    [],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_parse_error_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.qalg"
    bad.write_text("algebra x\ngenerators a\nrelation a = a a\n")
    code, _, err = run(capsys, "parse", str(bad))
    assert code == 2
    assert "line 3" in err


def test_parse_fixture(capsys):
    from importlib import resources
    path = resources.files("qcoact").joinpath("data", "vs7.qalg")
    code, out, _ = run(capsys, "parse", str(path))
    assert code == 0 and "algebra vs7" in out


def test_node_cap_exits_three(capsys):
    code, _, _ = run(capsys, "classify", "--preset", "vs", "--m", "1", "--t", "3/4", "--u", "3/4", "--nodes", "5")
    assert code == 3


def test_classify_json_schema(capsys, tmp_path):
    path = tmp_path / "c.json"
    run(capsys, "classify", "--preset", "vs", "--m", "1", "--t", "3/4", "--u", "1/2", "--json", str(path))
    data = json.loads(path.read_text())
    assert data["families"] == [] and data["unresolved"] == []
    assert data["preset"] and data["m"] == 1
