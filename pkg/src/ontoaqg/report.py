"""Report serialisation: JSON, CSV and rounded text tables.

JSON and CSV carry full precision (``repr`` of each float, which
round-trips exactly). Only the text format rounds, to one decimal.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional, Sequence

from .metrics import METRIC_NAMES, METRICS, MetricReport, normalize_profiles
from .qgen import STRATEGY_LABELS, Question, Strategy, count_by_strategy

SCHEMA_VERSION = "1.0"
COUNT_KEYS = ("concepts", "populatedConcepts", "instances", "subsumptions",
              "propertyAssertions", "populatedSiblings")


def report_to_dict(report: MetricReport) -> dict:
    return {
        "ontologyId": report.ontology_id,
        "metrics": {m: getattr(report, m) for m in METRICS},
        "flags": dict(report.flags),
        "usedFragments": sorted(f.value for f in report.used_fragments),
        "fragmentTotal": report.fragment_total,
        "counts": {k: report.counts[k] for k in COUNT_KEYS},
    }


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def evaluation_json(reports: Sequence[MetricReport], normalize: bool = False) -> str:
    body: dict = {"schemaVersion": SCHEMA_VERSION,
                  "reports": [report_to_dict(r) for r in reports]}
    if normalize:
        body["normalized"] = [
            {"ontologyId": r.ontology_id, "metrics": row}
            for r, row in zip(reports, normalize_profiles(reports))
        ]
    return _dumps(body)


def _fmt(v: float) -> str:
    return repr(float(v))


CSV_COLUMNS = ["section", "ontologyId", *METRICS, "usedFragments", "fragmentTotal",
               *COUNT_KEYS, "flags"]


def evaluation_csv(reports: Sequence[MetricReport], normalize: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow([
            "raw", r.ontology_id, *(_fmt(getattr(r, m)) for m in METRICS),
            ";".join(sorted(f.value for f in r.used_fragments)), r.fragment_total,
            *(r.counts[k] for k in COUNT_KEYS),
            ";".join(f"{k}={v}" for k, v in r.flags.items()),
        ])
    if normalize:
        for r, row in zip(reports, normalize_profiles(reports)):
            writer.writerow(["normalized", r.ontology_id, *(_fmt(row[m]) for m in METRICS),
                             *[""] * (len(CSV_COLUMNS) - 2 - len(METRICS))])
    return buf.getvalue()


def parse_evaluation_csv(text: str) -> list[dict]:
    """Read back rows written by :func:`evaluation_csv` with floats restored."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = dict(row)
        for m in METRICS:
            parsed[m] = float(row[m])
        rows.append(parsed)
    return rows


def _text_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    lines = []
    for idx, r in enumerate([header, *rows]):
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _round1(v: float) -> str:
    return f"{v:.1f}" if abs(v) < 1e6 else f"{v:.0f}"


def comparison_text(reports: Sequence[MetricReport], normalize: bool = False) -> str:
    header = ["Metric", *(r.ontology_id for r in reports)]
    rows = [[f"{METRIC_NAMES[m]} ({m})", *(_round1(getattr(r, m)) for r in reports)]
            for m in METRICS]
    out = _text_table(header, rows)
    flagged = [f"  {r.ontology_id}: {m} undefined ({why})"
               for r in reports for m, why in r.flags.items()]
    if flagged:
        out += "\nFlags:\n" + "\n".join(flagged) + "\n"
    if normalize:
        norm = normalize_profiles(reports)
        nrows = [[f"{METRIC_NAMES[m]} ({m})", *(f"{row[m]:.2f}" for row in norm)]
                 for m in METRICS]
        out += "\nNormalized\n" + _text_table(header, nrows)
    return out


def comparison_csv(reports: Sequence[MetricReport], normalize: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["section", "metric", *(r.ontology_id for r in reports)])
    for m in METRICS:
        writer.writerow(["raw", m, *(_fmt(getattr(r, m)) for r in reports)])
    if normalize:
        norm = normalize_profiles(reports)
        for m in METRICS:
            writer.writerow(["normalized", m, *(_fmt(row[m]) for row in norm)])
    return buf.getvalue()


def comparison_json(reports: Sequence[MetricReport], normalize: bool = True) -> str:
    body: dict = {
        "schemaVersion": SCHEMA_VERSION,
        "ontologies": [r.ontology_id for r in reports],
        "metrics": {m: [getattr(r, m) for r in reports] for m in METRICS},
    }
    if normalize:
        norm = normalize_profiles(reports)
        body["normalized"] = {m: [row[m] for row in norm] for m in METRICS}
    return _dumps(body)


# -- question banks -----------------------------------------------------------

def questions_jsonl(questions: Sequence[Question]) -> str:
    return "".join(q.to_json() + "\n" for q in questions)


def questions_text(questions: Sequence[Question]) -> str:
    return "".join(q.to_text() + "\n\n" for q in questions)


def questions_csv(questions: Sequence[Question]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["strategy", "stem", "answers", "distractors", "focus"])
    for q in questions:
        writer.writerow([q.strategy.value, q.stem, " | ".join(q.correct_answers),
                         " | ".join(q.distractors),
                         q.focus_entity.value if q.focus_entity else ""])
    return buf.getvalue()


def strategy_summary(questions: Sequence[Question], ontology_id: str,
                     counts: Optional[dict[Strategy, int]] = None) -> str:
    counts = counts or count_by_strategy(questions)
    rows = [[STRATEGY_LABELS[s], str(counts[s])] for s in Strategy]
    rows.append(["Total", str(sum(counts.values()))])
    return _text_table(["Strategy", ontology_id], rows)
