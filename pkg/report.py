"""Human and machine renderings of check results.

A report item is a dict with the keys ``proposition``, ``verdict``,
``witnesses``, ``bounds``, ``oracle_agreement`` and optionally ``message``.
"""
import json
import logging
from typing import List, Optional

try:
    from reportlab.lib.pagesizes import letter
    from reportlab.pdfgen import canvas
    _REPORTLAB_AVAILABLE = True
except Exception:
    letter = canvas = None
    _REPORTLAB_AVAILABLE = False

from verdicts import Status, exit_code

logger = logging.getLogger(__name__)

REPORT_KEYS = ("proposition", "verdict", "witnesses", "bounds", "oracle_agreement")
LINES_PER_PAGE = 60


def make_item(proposition: str, verdict, witnesses=(), bounds=None,
              oracle_agreement: Optional[bool] = None, message: str = "") -> dict:
    status = verdict.status if hasattr(verdict, "status") else Status(verdict)
    item = {
        "proposition": proposition,
        "verdict": status.value,
        "witnesses": [str(w) for w in witnesses],
        "bounds": dict(bounds or {}),
        "oracle_agreement": oracle_agreement,
    }
    if message:
        item["message"] = message
    return item


def item_from_verdict(proposition: str, verdict, oracle_agreement: Optional[bool] = None,
                      message: str = "") -> dict:
    witnesses = [] if verdict.witness is None else [verdict.witness]
    bounds = {} if verdict.bound is None else {"bound": verdict.bound}
    return make_item(proposition, verdict, witnesses, bounds, oracle_agreement,
                     message or verdict.detail)


def format_report(items: List[dict]) -> str:
    if not items:
        return "No results."

    lines = []
    counts = {"passed": 0, "failed": 0, "undecided": 0}
    for it in items:
        code = exit_code(Status(it.get("verdict", Status.UNKNOWN.value)))
        counts[("passed", "failed", "undecided")[code]] += 1
        line = f"{it['verdict'].upper()} {it.get('proposition', '?')}"
        if it.get("message"):
            line += f": {it['message']}"
        for w in it.get("witnesses", []):
            line += f"\n    Witness: {w}"
        if it.get("bounds"):
            line += "\n    Bounds: " + ", ".join(f"{k}={v}" for k, v in sorted(it["bounds"].items()))
        if it.get("oracle_agreement") is not None:
            line += f"\n    Oracle agrees: {'yes' if it['oracle_agreement'] else 'no'}"
        lines.append(line)

    header = (f"Found {counts['passed']} passed, {counts['failed']} failed, "
              f"{counts['undecided']} undecided.\n")
    return header + "\n".join(lines)


def overall_exit_code(items: List[dict]) -> int:
    codes = [exit_code(Status(it["verdict"])) for it in items]
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0


def to_json(items: List[dict], meta: Optional[dict] = None) -> str:
    doc = {"reports": items}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def from_json(text: str) -> List[dict]:
    doc = json.loads(text)
    items = doc.get("reports", [])
    for it in items:
        missing = [k for k in REPORT_KEYS if k not in it]
        if missing:
            raise ValueError(f"report item lacks {', '.join(missing)}")
    return items


def export_pdf(text: str, path: str) -> bool:
    """Write the human report to a PDF; False when reportlab is missing."""
    if not _REPORTLAB_AVAILABLE:
        logger.warning("reportlab is not installed; skipping PDF export to %s", path)
        return False
    c = canvas.Canvas(path, pagesize=letter)
    body = c.beginText(40, 750)
    for i, line in enumerate(text.splitlines()):
        body.textLine(line.rstrip())
        if (i + 1) % LINES_PER_PAGE == 0:
            c.drawText(body)
            c.showPage()
            body = c.beginText(40, 750)
    c.drawText(body)
    c.save()
    return True
