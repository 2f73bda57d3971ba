"""Turn a ranked list of segments into a binary relevance string.

Three relevance models are provided:

``map_overlap``
    A result is relevant if it overlaps any relevant segment. Several
    results hitting the same relevant segment all count.
``map_binned``
    The timeline is cut into bins of ``bin_size`` seconds. Results are
    snapped to the bin holding their start time and same-bin duplicates
    are merged into the best-ranked one. A bin is relevant if it holds
    the start of a relevant segment (``extent="start"``, the default) or,
    with ``extent="full"``, if any relevant segment overlaps it.
``map_tolerance``
    The viewer watches ``window`` seconds from each result's start. A
    result is relevant if that window reaches relevant content that no
    earlier result has already been credited for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .core import RankedList, RunEntry, Segment, overlaps
from .ingest import JudgmentPool


@dataclass(frozen=True)
class JudgedItem:
    entry: RunEntry
    relevant: int
    judged: bool


@dataclass(frozen=True)
class JudgedRanking:
    query: str
    items: tuple[JudgedItem, ...]
    rel_total: int

    @property
    def ret_total(self) -> int:
        return len(self.items)

    @property
    def relevance(self) -> list[int]:
        return [it.relevant for it in self.items]

    @property
    def judged(self) -> list[bool]:
        return [it.judged for it in self.items]

    @property
    def rel_ret(self) -> int:
        return sum(self.relevance)


BIN_EXTENTS = ("start", "full")


@dataclass(frozen=True)
class BinConfig:
    bin_size: float = 60.0
    extent: str = "start"

    def __post_init__(self) -> None:
        if not (self.bin_size > 0 and math.isfinite(self.bin_size)):
            raise ValueError(f"bin_size must be positive, got {self.bin_size}")
        if self.extent not in BIN_EXTENTS:
            raise ValueError(f"extent must be one of {BIN_EXTENTS}, got {self.extent!r}")


@dataclass(frozen=True)
class ToleranceConfig:
    window: float = 10.0

    def __post_init__(self) -> None:
        if not (self.window > 0 and math.isfinite(self.window)):
            raise ValueError(f"window must be positive, got {self.window}")


def _any_overlap(seg: Segment, others) -> bool:
    return any(overlaps(seg, o) for o in others)


def map_overlap(run: RankedList, pool: JudgmentPool) -> JudgedRanking:
    qj = pool[run.query]
    relevant, judged = qj.relevant, qj.judged_segments
    items = tuple(
        JudgedItem(e, int(_any_overlap(e.segment, relevant)), _any_overlap(e.segment, judged))
        for e in run.entries
    )
    return JudgedRanking(run.query, items, len(relevant))


def bin_index(t: float, cfg: BinConfig) -> int:
    """Index k of the bin [k*bin_size, (k+1)*bin_size) holding t."""
    bs = cfg.bin_size
    k = math.floor(t / bs)
    # float division can land one bin off near exact multiples
    while (k + 1) * bs <= t:
        k += 1
    while k * bs > t:
        k -= 1
    return k


def bin_floor(t: float, cfg: BinConfig) -> float:
    return bin_index(t, cfg) * cfg.bin_size


def bin_ceil(t: float, cfg: BinConfig) -> float:
    return (bin_index(t, cfg) + 1) * cfg.bin_size


def covered_bins(seg: Segment, cfg: BinConfig) -> range:
    """Indices of every bin sharing positive duration with ``seg``."""
    first = bin_index(seg.start, cfg)
    last = bin_index(seg.end, cfg)
    if last * cfg.bin_size >= seg.end:
        # end sits on a boundary: that bin is only touched
        last -= 1
    return range(first, last + 1)


def _bin_set(segments, cfg: BinConfig) -> set[tuple[str, int]]:
    if cfg.extent == "start":
        return {(s.video, bin_index(s.start, cfg)) for s in segments}
    return {(s.video, k) for s in segments for k in covered_bins(s, cfg)}


def map_binned(run: RankedList, pool: JudgmentPool, cfg: BinConfig) -> JudgedRanking:
    qj = pool[run.query]
    relevant_bins = _bin_set(qj.relevant, cfg)
    judged_bins = _bin_set(qj.judged_segments, cfg)

    items = []
    taken: set[tuple[str, int]] = set()
    for e in run.entries:
        key = (e.segment.video, bin_index(e.segment.start, cfg))
        if key in taken:
            continue
        taken.add(key)
        k = key[1]
        binned = replace(e, segment=Segment(key[0], k * cfg.bin_size, (k + 1) * cfg.bin_size))
        items.append(JudgedItem(binned, int(key in relevant_bins), key in judged_bins))
    return JudgedRanking(run.query, tuple(items), len(relevant_bins))


def map_tolerance(run: RankedList, pool: JudgmentPool, cfg: ToleranceConfig) -> JudgedRanking:
    qj = pool[run.query]
    relevant, judged = qj.relevant, qj.judged_segments
    credited = [False] * len(relevant)

    items = []
    for e in run.entries:
        s = e.segment
        # the result's own end time plays no part
        window = Segment(s.video, s.start, s.start + cfg.window)
        hits = [i for i, r in enumerate(relevant) if overlaps(window, r)]
        fresh = any(not credited[i] for i in hits)
        if fresh:
            for i in hits:
                credited[i] = True
        items.append(JudgedItem(e, int(fresh), _any_overlap(window, judged)))
    return JudgedRanking(run.query, tuple(items), len(relevant))
