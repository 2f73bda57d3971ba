"""trec_eval-style rendering: one ``measure<TAB>scope<TAB>value`` row per line."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .metrics import COUNT_MEASURES, Evaluation

_KNOWN = re.compile(
    r"(?:num_q|videos_ret|videos_rel|avglength_ret|avglength_rel"
    r"|(?:num_rel|num_ret|num_rel_ret|map|P_[1-9]\d*|Judged_[1-9]\d*)(?:_bin|_tol)?)\Z"
)


def is_known_measure(name: str) -> bool:
    return bool(_KNOWN.match(name))


def is_count(name: str) -> bool:
    return name in COUNT_MEASURES


def format_value(measure: str, value: float | int) -> str:
    if not is_known_measure(measure):
        raise ValueError(f"unknown measure {measure!r}")
    if is_count(measure):
        return str(int(value))
    return f"{value:.4f}"


@dataclass(frozen=True)
class ReportRow:
    measure: str
    scope: str
    value: str


def build_rows(evaluation: Evaluation, per_query: bool = False) -> list[ReportRow]:
    rows = []
    scores = (evaluation.per_query if per_query else []) + [evaluation.summary]
    for qs in scores:
        for name, v in qs.values.items():
            rows.append(ReportRow(name, qs.query, format_value(name, v)))
    return rows


def render(rows: list[ReportRow], mode: str = "tsv", header: dict | None = None) -> str:
    """Render rows as tab separated text or as a JSON document.

    In tsv mode ``header`` becomes a single ``#`` comment line; in json
    mode it is stored under ``"parameters"`` next to ``"measures"``
    (measure -> scope -> number).
    """
    for row in rows:
        if not is_known_measure(row.measure):
            raise ValueError(f"unknown measure {row.measure!r}")
    if mode == "tsv":
        lines = []
        if header:
            lines.append("# " + " ".join(f"{k}={v}" for k, v in header.items()))
        lines += [f"{r.measure}\t{r.scope}\t{r.value}" for r in rows]
        return "\n".join(lines) + "\n"
    if mode == "json":
        measures: dict[str, dict[str, float | int]] = {}
        for r in rows:
            value = int(r.value) if is_count(r.measure) else float(r.value)
            measures.setdefault(r.measure, {})[r.scope] = value
        doc = {"parameters": header or {}, "measures": measures}
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown output mode {mode!r}")


def parse_tsv(text: str) -> list[tuple[str, str, str]]:
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        measure, scope, value = line.split("\t")
        out.append((measure, scope, value))
    return out
