"""Synthetic instances and a brute-force reference evaluator.

The oracle deliberately shares no code with :mod:`segeval.mapping` or
:mod:`segeval.metrics`: it re-derives every measure with nested loops
and walks every bin of the timeline one by one. It only reads plain
attributes off the parsed pool and run objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Judgment, RunEntry, Segment, rank
from .ingest import JudgmentPool, format_qrel, format_run

ORACLE_MAX_ITEMS = 8


@dataclass(frozen=True)
class SyntheticSpec:
    seed: int = 0
    queries: int = 3
    videos: int = 3
    judgments_per_query: tuple[int, int] = (1, 8)
    results_per_query: tuple[int, int] = (1, 8)
    segment_length: tuple[float, float] = (5.0, 120.0)
    timeline: float = 600.0
    relevant_fraction: float = 0.6

    def __post_init__(self) -> None:
        for name in ("judgments_per_query", "results_per_query", "segment_length"):
            lo, hi = getattr(self, name)
            if lo <= 0 or hi < lo:
                raise ValueError(f"{name} must be a non-empty positive range, got {(lo, hi)}")
        if self.queries < 1 or self.videos < 1 or self.timeline <= 0:
            raise ValueError("queries, videos and timeline must be positive")


def _half(x: float) -> float:
    # half-second grid keeps every time exactly representable
    return round(x * 2) / 2


def _segments(rng, n, spec: SyntheticSpec, anchors=()) -> list[Segment]:
    lo, hi = spec.segment_length
    out: list[Segment] = []
    keys = set()
    attempts = 0
    while len(out) < n and attempts < 50 * n:
        attempts += 1
        length = _half(rng.uniform(lo, hi)) if hi > lo else float(lo)
        length = max(length, 0.5)
        if anchors and rng.random() < 0.7:
            a = anchors[rng.integers(len(anchors))]
            video = a.video
            start = _half(max(0.0, a.start + rng.uniform(-40, 40)))
        else:
            video = f"v{rng.integers(spec.videos)}"
            start = _half(rng.uniform(0, spec.timeline))
        key = (video, start, start + length)
        if key in keys:
            continue
        keys.add(key)
        out.append(Segment(video, start, start + length))
    return out


def generate(spec: SyntheticSpec):
    """Build a random (pool, runs) pair; the same spec always gives the same instance."""
    rng = np.random.default_rng(spec.seed)
    judgments = []
    runs = []
    for qi in range(spec.queries):
        q = f"q{qi + 1}"
        nj = int(rng.integers(spec.judgments_per_query[0], spec.judgments_per_query[1] + 1))
        judged = _segments(rng, nj, spec)
        for seg in judged:
            judgments.append(Judgment(q, seg, int(rng.random() < spec.relevant_fraction)))
        nr = int(rng.integers(spec.results_per_query[0], spec.results_per_query[1] + 1))
        results = _segments(rng, nr, spec, anchors=judged)
        entries = [
            # one decimal place makes score ties common
            RunEntry(q, seg, i + 1, round(float(rng.uniform(0, 1)), 1), "synth")
            for i, seg in enumerate(results)
        ]
        runs.append(rank(q, entries))
    return JudgmentPool.from_judgments(judgments), runs


def write_instance(pool, runs, directory) -> tuple[Path, Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    qrel, run = d / "qrel.txt", d / "run.txt"
    qrel.write_text(format_qrel(pool), encoding="utf-8")
    run.write_text(format_run(runs), encoding="utf-8")
    return qrel, run


class InstanceTooLarge(ValueError):
    pass


def _touch(v1, s1, e1, v2, s2, e2) -> bool:
    if v1 != v2:
        return False
    shared = min(e1, e2) - max(s1, s2)
    return shared > 0


def oracle_strings(entries, judgments, bin_size, window, extent="start"):
    """Relevance/judged strings and relevant totals under all three models.

    ``entries``: list of (video, start, end) in rank order.
    ``judgments``: list of (video, start, end, relevance).
    """
    rel = [(v, s, e) for v, s, e, r in judgments if r == 1]
    allj = [(v, s, e) for v, s, e, r in judgments]

    overlap = []
    for v, s, e in entries:
        hit = 0
        seen = False
        for rv, rs, re_ in rel:
            if _touch(v, s, e, rv, rs, re_):
                hit = 1
        for jv, js, je in allj:
            if _touch(v, s, e, jv, js, je):
                seen = True
        overlap.append((hit, seen))

    horizon = 0.0
    for group in (entries, allj):
        for v, s, e in group:
            horizon = max(horizon, e)
    nbins = 0
    while nbins * bin_size <= horizon:
        nbins += 1
    videos = sorted({x[0] for x in entries} | {x[0] for x in allj})
    rel_bins = []
    judged_bins = []
    for v in videos:
        for k in range(nbins):
            lo, hi = k * bin_size, (k + 1) * bin_size
            if extent == "full":
                is_rel = any(_touch(v, lo, hi, *r) for r in rel)
                is_judged = any(_touch(v, lo, hi, *j) for j in allj)
            else:
                is_rel = any(rv == v and lo <= rs < hi for rv, rs, _ in rel)
                is_judged = any(jv == v and lo <= js < hi for jv, js, _ in allj)
            if is_rel:
                rel_bins.append((v, k))
            if is_judged:
                judged_bins.append((v, k))
    binned = []
    kept = []
    for v, s, e in entries:
        k = 0
        while not (k * bin_size <= s < (k + 1) * bin_size):
            k += 1
        if (v, k) in kept:
            continue
        kept.append((v, k))
        binned.append((int((v, k) in rel_bins), (v, k) in judged_bins))

    tolerance = []
    used = []
    for v, s, e in entries:
        we = s + window
        overlapped = [i for i in range(len(rel)) if _touch(v, s, we, *rel[i])]
        new = [i for i in overlapped if i not in used]
        if new:
            used.extend(i for i in overlapped if i not in used)
        seen = any(_touch(v, s, we, *j) for j in allj)
        tolerance.append((1 if new else 0, seen))

    return {
        "": (overlap, len(rel)),
        "_bin": (binned, len(rel_bins)),
        "_tol": (tolerance, len(rel)),
    }


def _oracle_ap(string, rel_total):
    hits = 0
    total = 0.0
    for i, r in enumerate(string, start=1):
        if r:
            hits += 1
            total += hits / i
    denom = rel_total if rel_total > hits else hits
    return total / denom if denom else 0.0


def _oracle_round(x):
    whole = int(x)
    return whole + 1 if x - whole >= 0.5 else whole


def oracle_evaluate(pool, runs, bin_size, window, precision_cutoffs=(5, 10, 20),
                    judged_cutoffs=(10, 20, 30), extent="start"):
    """Full measure table ``{scope: {measure: value}}`` including ``"all"``."""
    table = {}
    ret_segments = []
    rel_segments = []
    for run in runs:
        if run.query not in pool:
            continue
        entries = [(e.segment.video, e.segment.start, e.segment.end) for e in run.entries]
        judgments = [(j.segment.video, j.segment.start, j.segment.end, j.relevance)
                     for j in pool[run.query].judged]
        if len(entries) > ORACLE_MAX_ITEMS or len(judgments) > ORACLE_MAX_ITEMS:
            raise InstanceTooLarge(
                f"query {run.query}: oracle handles at most {ORACLE_MAX_ITEMS} results/judgments"
            )
        ret_segments += entries
        rel_here = [(v, s, e) for v, s, e, r in judgments if r == 1]
        rel_segments += rel_here
        row = {
            "videos_ret": len({x[0] for x in entries}),
            "videos_rel": len({x[0] for x in rel_here}),
            "avglength_ret": _oracle_round(sum(e - s for _, s, e in entries) / len(entries)) if entries else 0,
            "avglength_rel": _oracle_round(sum(e - s for _, s, e in rel_here) / len(rel_here)) if rel_here else 0,
        }
        for fam, (pairs, rel_total) in oracle_strings(entries, judgments, bin_size, window, extent).items():
            string = [p[0] for p in pairs]
            flags = [p[1] for p in pairs]
            row[f"num_rel{fam}"] = rel_total
            row[f"num_ret{fam}"] = len(string)
            row[f"num_rel_ret{fam}"] = sum(string)
            row[f"map{fam}"] = _oracle_ap(string, rel_total)
            for n in precision_cutoffs:
                row[f"P_{n}{fam}"] = sum(string[:n]) / n
            for n in judged_cutoffs:
                row[f"Judged_{n}{fam}"] = sum(1 for f in flags[:n] if f) / n
        table[run.query] = row

    if not table:
        raise ValueError("no evaluable queries")
    rows = list(table.values())
    summary = {
        "num_q": len(rows),
        "videos_ret": len({x[0] for x in ret_segments}),
        "videos_rel": len({x[0] for x in rel_segments}),
        "avglength_ret": _oracle_round(sum(e - s for _, s, e in ret_segments) / len(ret_segments)) if ret_segments else 0,
        "avglength_rel": _oracle_round(sum(e - s for _, s, e in rel_segments) / len(rel_segments)) if rel_segments else 0,
    }
    for name in rows[0]:
        if name in summary:
            continue
        if name.startswith("num_"):
            summary[name] = sum(r[name] for r in rows)
        else:
            summary[name] = sum(r[name] for r in rows) / len(rows)
    table["all"] = summary
    return table
