import pytest

import report
from report import (export_pdf, format_report, from_json, item_from_verdict, make_item,
                    overall_exit_code, to_json)
from verdicts import Status, Verdict


def sample_items():
    return [
        make_item("right-lcm", Status.PASS, ["(12,0)"], {"box": 24}, True),
        item_from_verdict("equalizer", Verdict(Status.VERIFIED_UP_TO, witness="(3,0)", bound=30)),
        make_item("iso-interior", Status.UNKNOWN, message="budget exhausted"),
    ]


def test_format_report():
    text = format_report(sample_items())
    lines = text.splitlines()
    assert lines[0] == "Found 2 passed, 0 failed, 1 undecided."
    assert lines[1] == "PASS right-lcm"
    assert "    Witness: (12,0)" in lines
    assert "    Bounds: box=24" in lines
    assert "    Oracle agrees: yes" in lines
    assert "UNKNOWN iso-interior: budget exhausted" in lines


def test_format_empty_report():
    assert format_report([]) == "No results."


def test_json_round_trip_keeps_the_human_report():
    items = sample_items()
    text = to_json(items, {"command": "family"})
    assert from_json(text) == items
    assert format_report(from_json(text)) == format_report(items)


def test_from_json_checks_keys():
    with pytest.raises(ValueError):
        from_json('{"reports": [{"proposition": "x"}]}')


@pytest.mark.parametrize("verdicts,code", [
    ([Status.PASS, Status.DISTINCT, Status.NO, Status.EMPTY], 0),
    ([Status.PASS, Status.INCONCLUSIVE], 2),
    ([Status.UNKNOWN, Status.COUNTEREXAMPLE], 1),
    ([Status.FAIL], 1),
    ([Status.NOT_APPLICABLE], 0),
])
def test_overall_exit_code(verdicts, code):
    assert overall_exit_code([make_item("p", v) for v in verdicts]) == code


def test_pdf_skipped_without_reportlab(monkeypatch, tmp_path):
    monkeypatch.setattr(report, "_REPORTLAB_AVAILABLE", False)
    assert export_pdf("Found 0 passed.", str(tmp_path / "r.pdf")) is False


def test_pdf_written(tmp_path):
    pytest.importorskip("reportlab")
    path = tmp_path / "r.pdf"
    text = "\n".join(f"PASS line {i}" for i in range(130))
    assert export_pdf(text, str(path))
    assert path.read_bytes().startswith(b"%PDF")
