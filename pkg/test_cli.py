import json

import pytest

import main
import report

WITNESS = "(6,0)(1,1)inv((6,0))"


def run_cli(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compose(capsys):
    code, out, _ = run_cli(capsys, "compose", "(2,1)", "(3,2)")
    assert code == 0
    assert "(6,5)" in out
    assert out.startswith("Found 1 passed, 0 failed, 0 undecided.")


def test_germ_eq_distinct_is_not_a_failure(capsys):
    code, out, _ = run_cli(capsys, "germ", "eq", WITNESS, "(1,1)", "--at", "chi(6,0)")
    assert code == 0
    assert "DISTINCT germ-eq" in out


def test_germ_eq_oracle_skips_germs_at_different_characters(capsys):
    code, out, _ = run_cli(capsys, "germ", "eq", "germ(inv((2,0)); chi(2,0))",
                           "germ(inv((3,0)); chi(3,0))", "--oracle", "--json", "--no-meta")
    assert code == 0
    item = json.loads(out)["reports"][0]
    assert item["verdict"] == "Distinct"
    assert item["oracle_agreement"] is None


def test_verify_paper_json(capsys):
    argv = ("verify-paper", "--family", "nx-zmod", "--n", "6", "--bound", "50", "--json", "--no-meta")
    code, first, _ = run_cli(capsys, *argv)
    assert code == 0
    doc = json.loads(first)
    assert "meta" not in doc
    assert len(doc["reports"]) == 6
    assert {r["verdict"] for r in doc["reports"]} == {"Pass"}
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_verify_paper_znx(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--family", "z-nx", "--bound", "50")
    assert code == 0
    assert "chi(1,2)" in out


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main.main(["frobnicate"])
    assert info.value.code == 3


def test_parse_error(capsys):
    code, _, err = run_cli(capsys, "compose", "(2,", "(3,2)")
    assert code == 3
    assert "position" in err


def test_wrong_arity(capsys):
    code, _, _ = run_cli(capsys, "hull", "eq", "(2,0)")
    assert code == 3


def test_non_positive_bound(capsys):
    code, _, _ = run_cli(capsys, "family", "--bound", "0")
    assert code == 3


def test_unknown_family(capsys):
    code, _, err = run_cli(capsys, "family", "--family", "q-p")
    assert code == 3
    assert "q-p" in err


def test_table_that_is_not_left_cancellative(capsys, tables_dir):
    code, out, _ = run_cli(capsys, "family", "--family", f"table:{tables_dir / 'right_zero.json'}")
    assert code == 1
    assert "COUNTEREXAMPLE left-cancellative" in out


def test_missing_table(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "family", "--family", f"table:{tmp_path / 'none.json'}")
    assert code == 3


def test_znx_family(capsys):
    code, out, _ = run_cli(capsys, "family", "--family", "z-nx", "--bound", "20")
    assert code == 0
    assert "(1,1)" in out


def test_hull_eq_with_oracle(capsys):
    code, out, _ = run_cli(capsys, "hull", "eq", "(4,2)inv((2,0))", "(4,0)inv((2,4))",
                           "--oracle", "--bound", "12", "--json", "--no-meta")
    assert code == 0
    item = json.loads(out)["reports"][0]
    assert item["verdict"] == "Equal"
    assert item["oracle_agreement"] is True


def test_hull_apply(capsys):
    code, out, _ = run_cli(capsys, "hull", "apply", WITNESS, "(12,3)")
    assert code == 0
    assert "(12,5)" in out


def test_iso_interior(capsys):
    code, out, _ = run_cli(capsys, "iso-interior", WITNESS, "--at", "chi(6,0)")
    assert code == 0
    assert "YES iso-interior" in out


def test_isotropy(capsys):
    code, out, _ = run_cli(capsys, "isotropy", "chi(2,0)")
    assert code == 0
    assert "order 6" in out and "cyclic" in out


def test_rtp(capsys):
    code, out, _ = run_cli(capsys, "rtp", "chi(3,1)")
    assert code == 0
    assert "6 generators placed" in out
    code, _, _ = run_cli(capsys, "rtp", "chi(3,1)", "--subgroupoid", "units")
    assert code == 1


def test_empty_open_is_undecided_on_infinite_families(capsys):
    code, out, _ = run_cli(capsys, "char", "find", "in: (2,0), not: [(2,0)]", "--bound", "5")
    assert code == 2
    assert "INCONCLUSIVE" in out


def test_char_act(capsys):
    code, out, _ = run_cli(capsys, "char", "act", "(1,1)", "chi(0,2)", "--family", "z-nx")
    assert code == 0
    assert "chi(1,2)" in out


def test_oracle_check_on_a_table(capsys, tables_dir):
    code, out, _ = run_cli(capsys, "oracle-check", "--family", f"table:{tables_dir / 'z3.json'}")
    assert code == 0
    assert "Oracle agrees: yes" in out


def test_oracle_check_on_a_family(capsys):
    code, _, _ = run_cli(capsys, "oracle-check", "--bound", "12", "--seed", "3")
    assert code == 0


def test_meta_block(capsys):
    _, out, _ = run_cli(capsys, "compose", "(2,1)", "(3,2)", "--json")
    meta = json.loads(out)["meta"]
    assert meta["command"] == "compose"
    assert meta["family"] == "nx-zmod:6"


def test_pdf_without_reportlab(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(report, "_REPORTLAB_AVAILABLE", False)
    code, _, err = run_cli(capsys, "compose", "(2,1)", "(3,2)", "--pdf", str(tmp_path / "out.pdf"))
    assert code == 0
    assert "reportlab" in err
    assert not (tmp_path / "out.pdf").exists()
