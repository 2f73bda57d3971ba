"""Domain types and interval arithmetic shared by the rest of the package.

Times are real-valued seconds. A segment is a half-open span of one video;
two segments overlap only when they share a strictly positive duration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Segment:
    video: str
    start: float
    end: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValueError(f"non-finite time in segment {self}")
        if self.start < 0:
            raise ValueError(f"negative time: start={self.start}")
        if self.start >= self.end:
            raise ValueError(f"start >= end: {self.start} >= {self.end}")

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class Judgment:
    query: str
    segment: Segment
    relevance: int

    def __post_init__(self) -> None:
        if self.relevance not in (0, 1):
            raise ValueError(f"relevance must be 0 or 1, got {self.relevance!r}")


@dataclass(frozen=True)
class RunEntry:
    query: str
    segment: Segment
    rank: int
    score: float
    run_tag: str = ""

    def __post_init__(self) -> None:
        if not math.isfinite(self.score):
            raise ValueError(f"non-finite score: {self.score}")
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")


@dataclass(frozen=True)
class RankedList:
    """Results for one query, best first.

    Construct through :func:`rank` (or the run parser) to get the
    score ordering; the constructor only checks it.
    """

    query: str
    entries: tuple[RunEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if e.query != self.query:
                raise ValueError(f"entry for query {e.query!r} in ranked list of {self.query!r}")
        for a, b in zip(self.entries, self.entries[1:]):
            if b.score > a.score:
                raise ValueError(f"ranked list of {self.query!r} is not in descending score order")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def rank(query: str, entries) -> RankedList:
    """Order entries by descending score; ties keep their input order."""
    return RankedList(query, tuple(sorted(entries, key=lambda e: -e.score)))


def overlaps(a: Segment, b: Segment) -> bool:
    # touching endpoints share zero time and do not count
    return a.video == b.video and max(a.start, b.start) < min(a.end, b.end)


def duration(a: Segment) -> float:
    return a.end - a.start
