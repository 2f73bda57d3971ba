"""
Three ways to judge a retrieved segment
=======================================

One relevant stretch of video, four retrieved segments, and three answers
to the question "was this result relevant?".
"""

from segeval import (
    BinConfig,
    Judgment,
    JudgmentPool,
    RunEntry,
    Segment,
    ToleranceConfig,
    map_binned,
    map_overlap,
    map_tolerance,
    rank,
)

pool = JudgmentPool.from_judgments([
    Judgment("q1", Segment("news", 100, 150), 1),
    Judgment("q1", Segment("news", 300, 330), 0),
])

results = [("news", 50, 120), ("news", 95, 200), ("news", 110, 140), ("news", 98, 130)]
run = rank("q1", [
    RunEntry("q1", Segment(*r), i + 1, 1.0 - i / 10, "demo") for i, r in enumerate(results)
])

###############################################################################
# Overlap: every result touching relevant content counts, so the same
# relevant segment can be found several times.
print("overlap  ", map_overlap(run, pool).relevance)

###############################################################################
# Binned: results snap to the 60 s bin holding their start; results 2 and 4
# share a bin and collapse into one entry.
jr = map_binned(run, pool, BinConfig(60))
print("binned   ", jr.relevance, [it.entry.segment for it in jr.items])

###############################################################################
# Tolerance: the viewer watches 10 s from each start. Only the first result
# to reach the relevant segment gets credit for it.
print("tolerance", map_tolerance(run, pool, ToleranceConfig(10)).relevance)
