"""Reading and writing qrel and run files.

Both formats are TREC-like with a literal ``Q0`` column and two extra
time columns (decimal seconds)::

    qrel:  <query> Q0 <video> <start> <end> <relevance>
    run:   <query> Q0 <video> <start> <end> <rank> <score> <run_tag>

Fields are separated by runs of spaces or tabs. Blank lines and lines
starting with ``#`` are ignored. Time formats such as ``mm.ss`` or
``hh:mm:ss`` are not supported.
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .core import Judgment, RankedList, RunEntry, Segment, rank

log = logging.getLogger(__name__)

_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)\Z")
_INTEGER = re.compile(r"[+-]?\d+\Z")


class ParseError(ValueError):
    def __init__(self, reason: str, lineno: int, text: str, source: str = "<input>"):
        self.reason = reason
        self.lineno = lineno
        self.text = text
        self.source = source
        super().__init__(f"{source}:{lineno}: {reason}: {text!r}")


class NoEvaluableQueries(ValueError):
    pass


@dataclass(frozen=True)
class QueryJudgments:
    query: str
    judged: tuple[Judgment, ...]

    @property
    def relevant(self) -> tuple[Segment, ...]:
        """The relevant segments for this query, in file order."""
        return tuple(j.segment for j in self.judged if j.relevance == 1)

    @property
    def judged_segments(self) -> tuple[Segment, ...]:
        return tuple(j.segment for j in self.judged)


@dataclass(frozen=True)
class JudgmentPool(Mapping):
    """All judgments, grouped by query in first-appearance order."""

    queries: dict[str, QueryJudgments] = field(default_factory=dict)

    def __getitem__(self, query: str) -> QueryJudgments:
        return self.queries[query]

    def __iter__(self) -> Iterator[str]:
        return iter(self.queries)

    def __len__(self) -> int:
        return len(self.queries)

    @classmethod
    def from_judgments(cls, judgments: Iterable[Judgment]) -> JudgmentPool:
        grouped: dict[str, list[Judgment]] = {}
        for j in judgments:
            grouped.setdefault(j.query, []).append(j)
        return cls({q: QueryJudgments(q, tuple(js)) for q, js in grouped.items()})


def _records(lines: Iterable[str]) -> Iterator[tuple[int, str, list[str]]]:
    for lineno, raw in enumerate(lines, start=1):
        text = raw.rstrip("\r\n")
        stripped = text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, text, stripped.split()


def _time(value: str) -> float:
    if not _DECIMAL.match(value):
        raise ValueError(f"non-numeric time {value!r}")
    t = float(value)
    if t < 0:
        raise ValueError("negative time")
    return t


def _segment(video: str, start: str, end: str) -> Segment:
    s, e = _time(start), _time(end)
    if s >= e:
        raise ValueError("start ≥ end")
    return Segment(video, s, e)


def _check_q0(value: str) -> None:
    if value != "Q0":
        raise ValueError(f"expected literal Q0 in column 2, got {value!r}")


def parse_qrel(lines: Iterable[str], source: str = "<qrel>") -> JudgmentPool:
    judgments: list[Judgment] = []
    seen: dict[tuple[str, str, float, float], int] = {}
    for lineno, text, fields in _records(lines):
        if len(fields) != 6:
            raise ParseError(f"expected 6 fields, got {len(fields)}", lineno, text, source)
        query, q0, video, start, end, rel = fields
        try:
            _check_q0(q0)
            segment = _segment(video, start, end)
            if not _INTEGER.match(rel):
                raise ValueError(f"non-integer relevance {rel!r}")
        except ValueError as exc:
            raise ParseError(str(exc), lineno, text, source) from None
        key = (query, video, segment.start, segment.end)
        if key in seen:
            raise ParseError(f"duplicate judgment (first at line {seen[key]})", lineno, text, source)
        seen[key] = lineno
        # graded and negative grades collapse onto binary relevance
        judgments.append(Judgment(query, segment, 1 if int(rel) > 0 else 0))
    return JudgmentPool.from_judgments(judgments)


def parse_run(lines: Iterable[str], source: str = "<run>") -> list[RankedList]:
    grouped: dict[str, list[RunEntry]] = {}
    seen: dict[tuple[str, str, float, float], int] = {}
    for lineno, text, fields in _records(lines):
        if len(fields) != 8:
            raise ParseError(f"expected 8 fields, got {len(fields)}", lineno, text, source)
        query, q0, video, start, end, rank_field, score_field, tag = fields
        try:
            _check_q0(q0)
            segment = _segment(video, start, end)
            if not _INTEGER.match(rank_field):
                raise ValueError(f"non-integer rank {rank_field!r}")
            rank_value = int(rank_field)
            if rank_value < 1:
                raise ValueError("rank must be >= 1")
            score = float(score_field)
        except ValueError as exc:
            msg = str(exc)
            if msg.startswith("could not convert"):
                msg = f"non-numeric score {score_field!r}"
            raise ParseError(msg, lineno, text, source) from None
        if not math.isfinite(score):
            raise ParseError("non-finite score", lineno, text, source)
        key = (query, video, segment.start, segment.end)
        if key in seen:
            raise ParseError(f"duplicate result (first at line {seen[key]})", lineno, text, source)
        seen[key] = lineno
        grouped.setdefault(query, []).append(RunEntry(query, segment, rank_value, score, tag))
    return [rank(q, entries) for q, entries in grouped.items()]


def read_qrel(path) -> JudgmentPool:
    with open(path, encoding="utf-8") as f:
        return parse_qrel(f, source=str(path))


def read_run(path) -> list[RankedList]:
    with open(path, encoding="utf-8") as f:
        return parse_run(f, source=str(path))


def _num(x: float) -> str:
    return repr(float(x))


def format_qrel(pool: JudgmentPool) -> str:
    out = []
    for qj in pool.values():
        for j in qj.judged:
            s = j.segment
            out.append(f"{j.query} Q0 {s.video} {_num(s.start)} {_num(s.end)} {j.relevance}\n")
    return "".join(out)


def format_run(runs: Iterable[RankedList], tag: str | None = None) -> str:
    out = []
    for run in runs:
        for e in run.entries:
            s = e.segment
            out.append(
                f"{e.query} Q0 {s.video} {_num(s.start)} {_num(s.end)} "
                f"{e.rank} {_num(e.score)} {tag or e.run_tag or 'run'}\n"
            )
    return "".join(out)


@dataclass(frozen=True)
class EvaluationSet:
    pool: JudgmentPool
    runs: tuple[RankedList, ...]
    unjudged: tuple[str, ...] = ()
    unretrieved: tuple[str, ...] = ()

    @property
    def queries(self) -> tuple[str, ...]:
        return tuple(r.query for r in self.runs)

    @property
    def warnings(self) -> list[str]:
        return [f"query {q} retrieved but has no judgments; dropped" for q in self.unjudged] + [
            f"query {q} judged but never retrieved; dropped" for q in self.unretrieved
        ]


def align(pool: JudgmentPool, runs: Iterable[RankedList]) -> EvaluationSet:
    """Keep the queries present in both inputs, in run order.

    Dropped queries are reported through the module logger. Raises
    :class:`NoEvaluableQueries` if nothing is left.
    """
    runs = list(runs)
    kept = tuple(r for r in runs if r.query in pool)
    unjudged = tuple(r.query for r in runs if r.query not in pool)
    retrieved = {r.query for r in runs}
    unretrieved = tuple(q for q in pool if q not in retrieved)
    es = EvaluationSet(pool, kept, unjudged, unretrieved)
    for w in es.warnings:
        log.warning(w)
    if not kept:
        raise NoEvaluableQueries("no evaluable queries")
    return es
