import random

import pytest

from levelforge.corpus import Provenance, Segment
from levelforge.errors import BadStart, EmptyInput
from levelforge.playability import (
    CATEGORY_LOZ,
    CATEGORY_LR,
    categorize_segment,
    evaluate_segment,
    loz_playable,
    lr_on_loz_playable,
    lr_playable,
    lr_reachability,
    nearest_passable_corner,
    loz_rules,
    playability_report,
)

from grids import PLAYABILITY_SEGMENTS, blank, hline, put, seg
from oracles import (
    oracle_category,
    oracle_loz_verdict,
    oracle_lr_on_loz_verdict,
    oracle_lr_verdict,
)

ALL_NAMES = sorted(PLAYABILITY_SEGMENTS)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_verdicts_match_bfs_oracle(name):
    segment = PLAYABILITY_SEGMENTS[name]
    grid = segment.grid
    assert categorize_segment(segment) == oracle_category(grid), "category"
    assert lr_playable(segment) == oracle_lr_verdict(grid), "lr gold protocol"
    assert lr_on_loz_playable(segment) == oracle_lr_on_loz_verdict(grid), "lr corner protocol"
    assert loz_playable(segment) == oracle_loz_verdict(grid), "loz corner protocol"


def test_fixture_suite_exercises_both_verdicts():
    lr_verdicts = {lr_playable(PLAYABILITY_SEGMENTS[n]) for n in ALL_NAMES}
    loz_verdicts = {loz_playable(PLAYABILITY_SEGMENTS[n]) for n in ALL_NAMES}
    assert lr_verdicts == {True, False}
    assert loz_verdicts == {True, False}


def test_selected_expected_verdicts():
    s = PLAYABILITY_SEGMENTS
    assert lr_playable(s["flat_floor_gold"]) is True
    assert lr_playable(s["sealed_gold"]) is False
    assert lr_playable(s["dig_to_gold"]) is True
    assert lr_playable(s["dig_chain"]) is True
    assert lr_playable(s["sealed_under_solid"]) is False
    assert lr_playable(s["ladder_up_gold"]) is True
    assert lr_playable(s["rope_traverse"]) is True
    assert lr_playable(s["fall_collect"]) is True
    assert lr_playable(s["staircase_blocked"]) is False
    assert lr_playable(s["two_golds_one_sealed"]) is True
    assert lr_playable(s["two_golds_both_sealed"]) is False
    assert lr_playable(s["gold_free_platforms"]) is True
    assert loz_playable(s["open_room"]) is True
    assert loz_playable(s["all_wall"]) is False
    assert loz_playable(s["wall_bisect"]) is False
    assert loz_playable(s["water_bisect"]) is False
    assert loz_playable(s["water_ring"]) is True
    assert loz_playable(s["doored_room"]) is True
    assert loz_playable(s["monster_bisect"]) is False
    assert loz_playable(s["enemy_column"]) is True
    assert lr_on_loz_playable(s["walled_room_ladder"]) is True


def test_lr_reachability_flat_floor():
    segment = PLAYABILITY_SEGMENTS["flat_floor_gold"]
    reachable, gold = lr_reachability(segment, (14, 0))
    assert (14, 8) in reachable
    assert gold == {(14, 8)}


def test_lr_reachability_empty_grid_falls_to_virtual_floor():
    segment = seg(blank(), "empty")
    reachable, gold = lr_reachability(segment, (0, 0))
    assert reachable == {(15, c) for c in range(16)}
    assert gold == set()


def test_lr_reachability_bad_start():
    with pytest.raises(BadStart):
        lr_reachability(PLAYABILITY_SEGMENTS["flat_floor_gold"], (15, 0))  # inside floor


def test_gravity_invariant_reachable_states_supported():
    from levelforge.playability import _World, lr_rules

    for name in ALL_NAMES:
        segment = PLAYABILITY_SEGMENTS[name]
        world = _World(segment, lr_rules())
        starts = [(r, c) for r in range(16) for c in range(16)
                  if segment.grid[r][c] in lr_rules().passable][:2]
        for start in starts:
            reachable, _ = lr_reachability(segment, start)
            check = _World(segment, lr_rules())
            check.dug = set()  # support check ignores dug bricks conservatively
            for r, c in reachable:
                assert world.supported(r, c) or world.grid[r][c] in world.rules.passable


def test_categorize_examples():
    g = blank()
    hline(g, 15, 0, 15, "b")
    assert categorize_segment(seg(g, "lr")) == CATEGORY_LR

    g = blank()
    hline(g, 15, 0, 15, "W")
    put(g, 3, 3, "F")
    assert categorize_segment(seg(g, "loz")) == CATEGORY_LOZ

    g = blank()
    for c in range(4):
        put(g, 0, c, "G")
        put(g, 1, c, "W")
    assert categorize_segment(seg(g, "tie")) == CATEGORY_LR


def test_nearest_passable_corner_tie_break():
    g = [["W"] * 16 for _ in range(16)]
    put(g, 1, 2, ".")
    put(g, 2, 1, ".")  # both Manhattan distance 3 from (0,0); row-major scan wins
    segment = seg(g, "tie")
    assert nearest_passable_corner(segment, "TL", loz_rules()) == (1, 2)


def test_loz_monotonicity_removing_solids():
    rng = random.Random(61)
    for _ in range(30):
        g = blank()
        for _ in range(60):
            put(g, rng.randrange(16), rng.randrange(16), rng.choice("WBPFIOM"))
        segment = seg(g, "mono")
        before = loz_playable(segment)
        solid_cells = [(r, c) for r in range(16) for c in range(16)
                       if segment.grid[r][c] != "."]
        if not solid_cells:
            continue
        r, c = rng.choice(solid_cells)
        rows = [list(row) for row in segment.grid]
        rows[r][c] = "."
        opened = Segment(grid=tuple("".join(row) for row in rows),
                         provenance=segment.provenance)
        if before:
            assert loz_playable(opened), f"opening {(r, c)} broke playability"


def test_verdicts_deterministic():
    segment = PLAYABILITY_SEGMENTS["mixed_blend"]
    assert [evaluate_segment(segment)] * 3 == [evaluate_segment(segment) for _ in range(3)]


def test_playability_report_arithmetic():
    names = ["flat_floor_gold", "sealed_gold", "dig_to_gold", "open_room",
             "wall_bisect", "water_ring", "all_wall", "doored_room",
             "gold_free_platforms", "staircase_blocked"]
    segments = [PLAYABILITY_SEGMENTS[n] for n in names]
    report = playability_report(segments)
    assert report.n == 10
    assert report.lr_like + report.loz_like == 10
    expected_lr = sum(
        (lr_playable(s) if categorize_segment(s) == CATEGORY_LR else lr_on_loz_playable(s))
        for s in segments
    )
    expected_loz = sum(loz_playable(s) for s in segments)
    assert report.lr_astar_pct == 100.0 * expected_lr / 10
    assert report.loz_astar_pct == 100.0 * expected_loz / 10
    payload = report.to_json()
    assert len(payload["per_segment"]) == 10


def test_playability_report_all_dots():
    segments = [seg(blank(), f"d{i}") for i in range(4)]
    report = playability_report(segments)
    assert report.loz_astar_pct == 100.0


def test_playability_report_empty():
    with pytest.raises(EmptyInput):
        playability_report([])
