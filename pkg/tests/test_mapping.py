import pytest
from hypothesis import given, settings, strategies as st

from segeval.core import Judgment, RankedList, RunEntry, Segment, rank
from segeval.ingest import JudgmentPool, QueryJudgments
from segeval.mapping import (
    BinConfig,
    ToleranceConfig,
    bin_ceil,
    bin_floor,
    covered_bins,
    map_binned,
    map_overlap,
    map_tolerance,
)
from segeval.testkit import oracle_strings

from figures import FIG1, FIG2, FIG2_BIN_SIZE, FIG3, FIG3_WINDOW, instance


def test_fig1_overlap_counts_both_hits():
    pool, run = FIG1
    jr = map_overlap(run, pool)
    assert jr.relevance == [0, 1, 0, 1]
    assert jr.rel_total == 1 and jr.rel_ret == 2


@pytest.mark.parametrize("extent", ["start", "full"])
def test_fig2_binned_merges(extent):
    pool, run = FIG2
    jr = map_binned(run, pool, BinConfig(FIG2_BIN_SIZE, extent))
    assert jr.relevance == [0, 1]
    assert [it.entry.segment for it in jr.items] == [Segment("v1", 0, 60), Segment("v1", 60, 120)]
    # survivors keep the best-ranked original
    assert [it.entry.rank for it in jr.items] == [1, 2]
    assert jr.rel_total == 2


def test_fig3_tolerance():
    pool, run = FIG3
    jr = map_tolerance(run, pool, ToleranceConfig(FIG3_WINDOW))
    assert jr.relevance == [0, 1, 0, 0]
    assert jr.rel_total == 1


def test_overlap_derived_example():
    pool, run = instance([("v1", 100, 200)], [("v1", 90, 110), ("v1", 150, 160), ("v1", 250, 260)])
    assert map_overlap(run, pool).relevance == [1, 1, 0]
    entries = [(e.segment.video, e.segment.start, e.segment.end) for e in run.entries]
    oracle = oracle_strings(entries, [("v1", 100, 200, 1)], 60, 10)
    assert [p[0] for p in oracle[""][0]] == [1, 1, 0]


def test_overlap_unjudged_result():
    pool, run = instance([("v1", 100, 200)], [("v1", 300, 400)])
    item = map_overlap(run, pool).items[0]
    assert (item.relevant, item.judged) == (0, False)


def test_overlap_judged_non_relevant():
    pool, run = instance([("v1", 100, 200)], [("v1", 300, 400)], non_relevant=[("v1", 350, 360)])
    item = map_overlap(run, pool).items[0]
    assert (item.relevant, item.judged) == (0, True)


@pytest.mark.parametrize(
    "t, bs, lo, hi", [(125, 60, 120, 180), (120, 60, 120, 180), (0, 60, 0, 60), (59.999, 60, 0, 60)]
)
def test_bin_floor_ceil(t, bs, lo, hi):
    cfg = BinConfig(bs)
    assert bin_floor(t, cfg) == lo
    assert bin_ceil(t, cfg) == hi


def test_bin_floor_float_edge():
    # 0.3 / 0.1 == 2.9999999999999996 in binary floating point
    cfg = BinConfig(0.1)
    assert bin_floor(0.3, cfg) <= 0.3 < bin_ceil(0.3, cfg)


def test_full_extent_bins_derived():
    # enumerate bins [k*60, (k+1)*60) for k up to 10 and keep those sharing time with (50, 70)
    seg = Segment("v1", 50, 70)
    expected = [k for k in range(10) if max(k * 60, 50) < min((k + 1) * 60, 70)]
    assert expected == [0, 1]
    assert list(covered_bins(seg, BinConfig(60, "full"))) == expected
    pool, run = instance([("v1", 50, 70)], [("v1", 10, 20), ("v1", 100, 110), ("v1", 130, 140)])
    jr = map_binned(run, pool, BinConfig(60, "full"))
    assert jr.relevance == [1, 1, 0]
    assert jr.rel_total == 2


def test_start_extent_bins():
    pool, run = instance([("v1", 50, 70)], [("v1", 10, 20), ("v1", 100, 110)])
    jr = map_binned(run, pool, BinConfig(60))
    assert jr.relevance == [1, 0]
    assert jr.rel_total == 1


def test_covered_bins_boundary_end():
    assert list(covered_bins(Segment("v", 0, 120), BinConfig(60, "full"))) == [0, 1]


def test_single_result_binning_is_identity_length():
    pool, run = instance([("v1", 0, 10)], [("v1", 500, 900)])
    assert map_binned(run, pool, BinConfig(37)).ret_total == 1


def test_tolerance_ignores_result_end():
    pool, run = instance([("v1", 100, 120)], [("v1", 95, 300)])
    assert map_tolerance(run, pool, ToleranceConfig(10)).relevance == [1]
    pool, run = instance([("v1", 100, 120)], [("v1", 80, 300)])
    assert map_tolerance(run, pool, ToleranceConfig(10)).relevance == [0]


def test_tolerance_empty_relevant_set():
    pool, run = instance([], [("v1", 0, 10), ("v1", 5, 10)], non_relevant=[("v1", 0, 50)])
    jr = map_tolerance(run, pool, ToleranceConfig(10))
    assert jr.relevance == [0, 0]
    assert jr.judged == [True, True]


def test_tolerance_window_hitting_credited_and_fresh_segment():
    pool, run = instance(
        [("v1", 100, 110), ("v1", 112, 130)], [("v1", 100, 105), ("v1", 105, 110), ("v1", 115, 120)]
    )
    # second window (105,115) reaches the credited segment and the fresh one
    assert map_tolerance(run, pool, ToleranceConfig(10)).relevance == [1, 1, 0]


# -- properties --------------------------------------------------------------

VIDEOS = ("a", "b")


@st.composite
def seg_tuple(draw):
    start = draw(st.integers(0, 300)) / 2
    length = draw(st.integers(1, 160)) / 2
    return (draw(st.sampled_from(VIDEOS)), start, start + length)


@st.composite
def small_instance(draw, max_items=5):
    judged = draw(st.lists(seg_tuple(), max_size=max_items, unique=True))
    rels = draw(st.lists(st.integers(0, 1), min_size=len(judged), max_size=len(judged)))
    results = draw(st.lists(seg_tuple(), min_size=1, max_size=max_items, unique=True))
    pool = JudgmentPool(
        {"q": QueryJudgments("q", tuple(Judgment("q", Segment(*s), r) for s, r in zip(judged, rels)))}
    )
    entries = [RunEntry("q", Segment(*s), i + 1, float(len(results) - i)) for i, s in enumerate(results)]
    return pool, rank("q", entries), [s + (r,) for s, r in zip(judged, rels)], results


@settings(max_examples=300, deadline=None)
@given(
    small_instance(),
    st.sampled_from([7.5, 30, 60, 300]),
    st.sampled_from([5, 10, 60]),
    st.sampled_from(["start", "full"]),
)
def test_mappers_match_brute_force(inst, bs, window, extent):
    pool, run, judgments, results = inst
    oracle = oracle_strings(results, judgments, bs, window, extent)
    mapped = {
        "": map_overlap(run, pool),
        "_bin": map_binned(run, pool, BinConfig(bs, extent)),
        "_tol": map_tolerance(run, pool, ToleranceConfig(window)),
    }
    for fam, jr in mapped.items():
        pairs, rel_total = oracle[fam]
        assert jr.relevance == [p[0] for p in pairs], fam
        assert jr.judged == [p[1] for p in pairs], fam
        assert jr.rel_total == rel_total, fam


@settings(max_examples=200, deadline=None)
@given(small_instance(max_items=8), st.randoms(use_true_random=False))
def test_overlap_has_no_rank_coupling(inst, rnd):
    pool, run = inst[0], inst[1]
    order = list(range(len(run)))
    rnd.shuffle(order)
    n = len(order)
    permuted = RankedList("q", tuple(
        RunEntry("q", run.entries[i].segment, j + 1, float(n - j)) for j, i in enumerate(order)
    ))
    base = map_overlap(run, pool).relevance
    assert map_overlap(permuted, pool).relevance == [base[i] for i in order]


@settings(max_examples=200, deadline=None)
@given(small_instance(max_items=8), st.sampled_from([30, 60, 300]), st.sampled_from(["start", "full"]))
def test_binned_unique_and_idempotent(inst, bs, extent):
    pool, run = inst[0], inst[1]
    cfg = BinConfig(bs, extent)
    jr = map_binned(run, pool, cfg)
    keys = [(it.entry.segment.video, it.entry.segment.start) for it in jr.items]
    assert len(keys) == len(set(keys))
    again = map_binned(RankedList("q", tuple(it.entry for it in jr.items)), pool, cfg)
    assert again == jr
    assert jr.rel_ret <= jr.rel_total


@settings(max_examples=200, deadline=None)
@given(small_instance(max_items=8), st.sampled_from([5, 10, 60]))
def test_tolerance_credits_once_and_is_dominated(inst, window):
    pool, run = inst[0], inst[1]
    tol = map_tolerance(run, pool, ToleranceConfig(window))
    assert tol.rel_ret <= len(pool["q"].relevant)
    assert all(it.judged for it in tol.items if it.relevant)
    # dominance over overlap needs every window to stay inside its result
    if all(e.segment.duration >= window for e in run.entries):
        assert tol.rel_ret <= map_overlap(run, pool).rel_ret


def test_tolerance_window_past_short_result():
    pool, run = instance([("v1", 0.5, 1.0)], [("v1", 0.0, 0.5)])
    assert map_overlap(run, pool).relevance == [0]
    assert map_tolerance(run, pool, ToleranceConfig(5)).relevance == [1]


@given(st.floats(0, 1e6, allow_nan=False), st.sampled_from([0.1, 1, 7.5, 30, 60, 300]))
def test_bin_bounds(t, bs):
    cfg = BinConfig(bs)
    lo, hi = bin_floor(t, cfg), bin_ceil(t, cfg)
    assert lo <= t < hi
    assert hi - lo == pytest.approx(bs)


def test_configs_validate():
    with pytest.raises(ValueError):
        BinConfig(0)
    with pytest.raises(ValueError):
        BinConfig(60, "middle")
    with pytest.raises(ValueError):
        ToleranceConfig(-1)
