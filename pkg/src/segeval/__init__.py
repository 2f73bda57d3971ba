"""Evaluation of segment-based retrieval with binary IR measures.

Relevance of a retrieved video segment is decided by one of three models
(overlap, binned, tolerance to irrelevance) and the resulting relevance
strings are scored with P@n, MAP and Judged@n.
"""

from .core import Judgment, RankedList, RunEntry, Segment, duration, overlaps, rank
from .ingest import (
    EvaluationSet,
    JudgmentPool,
    NoEvaluableQueries,
    ParseError,
    align,
    format_qrel,
    format_run,
    parse_qrel,
    parse_run,
    read_qrel,
    read_run,
)
from .mapping import (
    BinConfig,
    JudgedItem,
    JudgedRanking,
    ToleranceConfig,
    bin_ceil,
    bin_floor,
    map_binned,
    map_overlap,
    map_tolerance,
)
from .metrics import (
    Evaluation,
    QueryScores,
    Settings,
    aggregate,
    average_precision,
    count_stats,
    evaluate,
    judged_at,
    precision_at,
)
from .report import ReportRow, build_rows, parse_tsv, render

__version__ = "0.1.0"
