"""Binary IR measures over judged rankings, per query and averaged."""

from __future__ import annotations

import math
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import RankedList
from .ingest import EvaluationSet, JudgmentPool
from .mapping import (
    BinConfig,
    JudgedRanking,
    ToleranceConfig,
    map_binned,
    map_overlap,
    map_tolerance,
)

DEFAULT_PRECISION_CUTOFFS = (5, 10, 20)
DEFAULT_JUDGED_CUTOFFS = (10, 20, 30)
FAMILIES = ("", "_bin", "_tol")

COUNT_MEASURES = frozenset(
    {"num_q", "videos_ret", "videos_rel", "avglength_ret", "avglength_rel"}
    | {f"num_{c}{fam}" for c in ("rel", "ret", "rel_ret") for fam in FAMILIES}
)


def _rels(jr) -> np.ndarray:
    if isinstance(jr, JudgedRanking):
        return np.asarray(jr.relevance, dtype=float)
    return np.asarray(list(jr), dtype=float)


def precision_at(jr: JudgedRanking | Sequence[int], n: int) -> float:
    """P@n; positions past the end of the list count as non-relevant."""
    if n < 1:
        raise ValueError(f"cutoff must be >= 1, got {n}")
    return float(_rels(jr)[:n].sum() / n)


def average_precision(jr: JudgedRanking | Sequence[int], rel_total: int | None = None) -> float:
    """Average precision of a relevance string.

    ``rel_total`` defaults to the ranking's own (mapper-adjusted) relevant
    count. Under overlap relevance a string can hold more hits than there
    are relevant segments; the larger of the two is then used as the
    denominator so the value stays within [0, 1].
    """
    r = _rels(jr)
    if rel_total is None:
        if not isinstance(jr, JudgedRanking):
            raise TypeError("rel_total is required for a bare relevance string")
        rel_total = jr.rel_total
    hits = r.sum()
    denom = max(rel_total, hits)
    if denom == 0:
        return 0.0
    ranks = np.arange(1, len(r) + 1)
    prec = np.cumsum(r) / ranks
    return float((prec * r).sum() / denom)


def judged_at(jr: JudgedRanking | Sequence[bool], n: int) -> float:
    if n < 1:
        raise ValueError(f"cutoff must be >= 1, got {n}")
    flags = jr.judged if isinstance(jr, JudgedRanking) else list(jr)
    return sum(bool(f) for f in flags[:n]) / n


def avg_length(segments) -> int:
    """Mean duration in whole seconds, halves rounded up; 0 for no segments."""
    segments = list(segments)
    if not segments:
        return 0
    mean = sum(s.duration for s in segments) / len(segments)
    return int(math.floor(mean + 0.5))


def count_stats(
    pool: JudgmentPool,
    runs: Sequence[RankedList],
    judged: dict[str, Sequence[JudgedRanking]] | None = None,
) -> dict[str, int]:
    """Collection-level counts over the given runs and their judgments.

    ``judged`` maps a family suffix (``""``, ``"_bin"``, ``"_tol"``) to
    that family's judged rankings; each present family adds its
    ``num_rel``/``num_ret``/``num_rel_ret`` sums.
    """
    retrieved = [e.segment for run in runs for e in run.entries]
    relevant = [s for run in runs if run.query in pool for s in pool[run.query].relevant]
    out = {
        "videos_ret": len({s.video for s in retrieved}),
        "videos_rel": len({s.video for s in relevant}),
        "avglength_ret": avg_length(retrieved),
        "avglength_rel": avg_length(relevant),
    }
    for fam, rankings in (judged or {}).items():
        out[f"num_rel{fam}"] = sum(jr.rel_total for jr in rankings)
        out[f"num_ret{fam}"] = sum(jr.ret_total for jr in rankings)
        out[f"num_rel_ret{fam}"] = sum(jr.rel_ret for jr in rankings)
    return out


@dataclass(frozen=True)
class Settings:
    bin: BinConfig = field(default_factory=BinConfig)
    tolerance: ToleranceConfig = field(default_factory=ToleranceConfig)
    precision_cutoffs: tuple[int, ...] = DEFAULT_PRECISION_CUTOFFS
    judged_cutoffs: tuple[int, ...] = DEFAULT_JUDGED_CUTOFFS

    def __post_init__(self) -> None:
        for name in ("precision_cutoffs", "judged_cutoffs"):
            cuts = tuple(getattr(self, name))
            object.__setattr__(self, name, cuts)
            if not cuts:
                raise ValueError(f"{name} must not be empty")
            if any(c < 1 for c in cuts) or any(b <= a for a, b in zip(cuts, cuts[1:])):
                raise ValueError(f"{name} must be positive and strictly increasing: {cuts}")


def measure_names(settings: Settings, per_query: bool = False) -> list[str]:
    """Report vocabulary in output order."""
    names = [] if per_query else ["num_q"]
    names += ["videos_ret", "videos_rel", "avglength_ret", "avglength_rel"]
    for fam in FAMILIES:
        names += [f"num_rel{fam}", f"num_ret{fam}", f"num_rel_ret{fam}", f"map{fam}"]
        names += [f"P_{n}{fam}" for n in settings.precision_cutoffs]
        names += [f"Judged_{n}{fam}" for n in settings.judged_cutoffs]
    return names


@dataclass
class QueryScores:
    query: str
    values: dict[str, float | int]

    @property
    def num_ret(self) -> int:
        return self.values["num_ret"]

    @property
    def num_rel(self) -> int:
        return self.values["num_rel"]

    @property
    def num_rel_ret(self) -> int:
        return self.values["num_rel_ret"]


def map_all(run: RankedList, pool: JudgmentPool, settings: Settings) -> dict[str, JudgedRanking]:
    return {
        "": map_overlap(run, pool),
        "_bin": map_binned(run, pool, settings.bin),
        "_tol": map_tolerance(run, pool, settings.tolerance),
    }


def score_ranking(jr: JudgedRanking, settings: Settings, fam: str = "") -> dict[str, float | int]:
    values: dict[str, float | int] = {
        f"num_rel{fam}": jr.rel_total,
        f"num_ret{fam}": jr.ret_total,
        f"num_rel_ret{fam}": jr.rel_ret,
        f"map{fam}": average_precision(jr),
    }
    for n in settings.precision_cutoffs:
        values[f"P_{n}{fam}"] = precision_at(jr, n)
    for n in settings.judged_cutoffs:
        values[f"Judged_{n}{fam}"] = judged_at(jr, n)
    return values


def score_query(run: RankedList, pool: JudgmentPool, settings: Settings) -> QueryScores:
    judged = map_all(run, pool, settings)
    values: dict[str, float | int] = count_stats(pool, [run])
    for fam, jr in judged.items():
        values.update(score_ranking(jr, settings, fam))
    return QueryScores(run.query, values)


def _score_task(args):
    return score_query(*args)


def aggregate(per_query: Sequence[QueryScores]) -> QueryScores:
    """Combine per-query scores into the ``all`` row.

    Counts are summed and everything else is averaged, both folded in
    input order. Collection-level statistics that are not sums
    (``num_q``, ``videos_*``, ``avglength_*``) are left to the caller.
    """
    if not per_query:
        raise ValueError("cannot aggregate an empty list of queries")
    out: dict[str, float | int] = {}
    for name in per_query[0].values:
        column = [qs.values[name] for qs in per_query]
        if name in COUNT_MEASURES:
            out[name] = sum(column)
        else:
            total = 0.0
            for v in column:
                total += v
            out[name] = total / len(column)
    return QueryScores("all", out)


@dataclass
class Evaluation:
    settings: Settings
    per_query: list[QueryScores]
    summary: QueryScores


def evaluate(es: EvaluationSet, settings: Settings | None = None, workers: int = 1) -> Evaluation:
    """Score every evaluable query under all three relevance models.

    ``workers`` > 1 fans queries out to a process pool; ``0`` uses one
    worker per CPU. Results come back in query order either way.
    """
    settings = settings or Settings()
    if workers == 0:
        workers = os.cpu_count() or 1
    tasks = [(run, JudgmentPool({run.query: es.pool[run.query]}), settings) for run in es.runs]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as ex:
            per_query = list(ex.map(_score_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        per_query = [_score_task(t) for t in tasks]

    summed = aggregate(per_query)
    values: dict[str, float | int] = {"num_q": len(per_query)}
    values.update(count_stats(es.pool, es.runs))
    for name, v in summed.values.items():
        values.setdefault(name, v)
    summary = QueryScores("all", {name: values[name] for name in measure_names(settings)})
    return Evaluation(settings, per_query, summary)
