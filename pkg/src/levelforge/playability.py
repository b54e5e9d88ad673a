"""Game-specific playability agents and the segment evaluation protocols.

Two move relations are modeled. The platformer agent has gravity: it walks
where supported, falls otherwise, climbs ladders, hangs from ropes, and digs
through diggable bricks diagonally below (dug cells stay open for the rest
of the episode). The dungeon agent moves freely in four directions, blocked
by solid tiles and un-crossable element tiles. A virtual solid floor sits
below the bottom row, since a segment is only a subsection of a level.
"""

from __future__ import annotations

import heapq
import math
import time
from collections import deque
from dataclasses import dataclass, field

from .corpus import SEGMENT_SIZE, Segment
from .errors import BadStart, EmptyInput, SearchBudgetExceeded
from .tiles import TileConfig, default_tile_config

CATEGORY_LR = "LR-like"
CATEGORY_LOZ = "LOZ-like"

_LAST = SEGMENT_SIZE - 1
_CORNERS = {"TL": (0, 0), "TR": (0, _LAST), "BL": (_LAST, 0), "BR": (_LAST, _LAST)}
# (start corner, goal corner) queries; playable needs >= 2 successes.
CORNER_QUERIES = (("BL", "TR"), ("BR", "TL"), ("TL", "BR"), ("TR", "BL"))


@dataclass(frozen=True)
class AgentRules:
    game: str
    passable: frozenset[str]
    solid: frozenset[str]
    climbable_up: frozenset[str] = frozenset()
    horizontal_climb: frozenset[str] = frozenset()
    diggable: frozenset[str] = frozenset()
    blocked_elements: frozenset[str] = frozenset()
    gravity: bool = True

    def __post_init__(self):
        if self.passable & self.solid:
            raise ValueError(f"passable and solid overlap: {sorted(self.passable & self.solid)}")


def lr_rules() -> AgentRules:
    return AgentRules(
        game="LR",
        passable=frozenset(".-#GSE"),
        solid=frozenset("BFPIODWM"),
        climbable_up=frozenset("#"),
        horizontal_climb=frozenset("-"),
        diggable=frozenset("b"),
        gravity=True,
    )


def loz_rules() -> AgentRules:
    return AgentRules(
        game="LOZ",
        passable=frozenset(".-#GSED"),
        solid=frozenset("BbFIOWM"),
        blocked_elements=frozenset("PIO"),
        gravity=False,
    )


@dataclass
class Deadline:
    """Wall-clock budget for one search; expired searches raise."""

    seconds: float | None = None
    _t0: float = field(default_factory=time.monotonic)

    def check(self):
        if self.seconds is not None and time.monotonic() - self._t0 > self.seconds:
            raise SearchBudgetExceeded(f"search exceeded {self.seconds}s")


class _World:
    """A segment plus the episode's dug-out cells, under one rule set."""

    def __init__(self, segment: Segment, rules: AgentRules):
        self.grid = segment.grid
        self.rules = rules
        self.dug: set[tuple[int, int]] = set()

    def in_bounds(self, r, c):
        return 0 <= r < SEGMENT_SIZE and 0 <= c < SEGMENT_SIZE

    def enterable(self, r, c):
        if not self.in_bounds(r, c):
            return False
        return self.grid[r][c] in self.rules.passable or (r, c) in self.dug

    def supported(self, r, c):
        if not self.rules.gravity:
            return True
        ch = self.grid[r][c]
        if ch in self.rules.climbable_up or ch in self.rules.horizontal_climb:
            return True
        if r == _LAST:
            return True  # virtual solid floor below the segment
        return not self.enterable(r + 1, c)

    def resolve_fall(self, r, c, touched):
        """Drop until supported, recording every cell passed through."""
        touched.add((r, c))
        while not self.supported(r, c):
            r += 1
            touched.add((r, c))
        return (r, c)

    def moves(self, r, c, touched):
        """Successor resolved states from a supported state."""
        out = []
        for dc in (-1, 1):
            if self.enterable(r, c + dc):
                out.append(self.resolve_fall(r, c + dc, touched))
        if not self.rules.gravity:
            for dr in (-1, 1):
                if self.enterable(r + dr, c):
                    out.append((r + dr, c))
                    touched.add((r + dr, c))
            return out
        if self.grid[r][c] in self.rules.climbable_up:
            if self.enterable(r - 1, c):
                out.append(self.resolve_fall(r - 1, c, touched))
            if self.enterable(r + 1, c):
                out.append(self.resolve_fall(r + 1, c, touched))
        return out

    def dig_candidates(self, positions):
        found = set()
        if not self.rules.diggable:
            return found
        for r, c in positions:
            for dc in (-1, 1):
                side = (r, c + dc)
                brick = (r + 1, c + dc)
                if (self.in_bounds(*brick) and self.enterable(*side)
                        and self.grid[brick[0]][brick[1]] in self.rules.diggable
                        and brick not in self.dug):
                    found.add(brick)
        return found


def _closure(world: _World, start, deadline: Deadline | None = None):
    """Reachable resolved states and all touched cells, with dig fixpoint."""
    deadline = deadline or Deadline()
    if not world.enterable(*start):
        raise BadStart(f"start {start} is not a passable cell")
    while True:
        touched: set[tuple[int, int]] = set()
        origin = world.resolve_fall(*start, touched) if world.rules.gravity else start
        touched.add(origin)
        visited = {origin}
        queue = deque([origin])
        while queue:
            deadline.check()
            r, c = queue.popleft()
            for nxt in world.moves(r, c, touched):
                if nxt not in visited:
                    visited.add(nxt)
                    queue.append(nxt)
        new_digs = world.dig_candidates(visited) - world.dug
        if not new_digs:
            return visited, touched
        world.dug |= new_digs


def astar_reach(segment: Segment, start, goal, rules: AgentRules,
                deadline: Deadline | None = None) -> bool:
    """A* query: can the agent touch the goal cell from start?

    Digging is resolved to its fixpoint first (dug cells only ever open the
    world up), then A* runs over resolved states with a Manhattan heuristic.
    The verdict matches plain breadth-first search over the same relation.
    """
    deadline = deadline or Deadline()
    world = _World(segment, rules)
    if not world.enterable(*start):
        return False
    if rules.diggable:
        _closure(world, start, deadline)

    def h(pos):
        return abs(pos[0] - goal[0]) + abs(pos[1] - goal[1])

    touched: set[tuple[int, int]] = set()
    origin = world.resolve_fall(*start, touched) if rules.gravity else start
    touched.add(origin)
    if goal in touched:
        return True
    open_heap = [(h(origin), 0, origin)]
    g_score = {origin: 0}
    closed = set()
    while open_heap:
        deadline.check()
        _, g, current = heapq.heappop(open_heap)
        if current in closed:
            continue
        closed.add(current)
        step_touched: set[tuple[int, int]] = set()
        for nxt in world.moves(*current, step_touched):
            if goal in step_touched or nxt == goal:
                return True
            if nxt not in g_score or g + 1 < g_score[nxt]:
                g_score[nxt] = g + 1
                heapq.heappush(open_heap, (g + 1 + h(nxt), g + 1, nxt))
        if goal in step_touched:
            return True
    return False


def lr_reachability(segment: Segment, start, deadline: Deadline | None = None):
    """(reachable resolved cells, collected gold cells) for the LR agent."""
    world = _World(segment, lr_rules())
    visited, touched = _closure(world, start, deadline)
    gold = {(r, c) for (r, c) in touched if segment.grid[r][c] == "G"}
    return visited, gold


def _passable_cells(segment: Segment, rules: AgentRules):
    for r in range(SEGMENT_SIZE):
        for c in range(SEGMENT_SIZE):
            if segment.grid[r][c] in rules.passable:
                yield r, c


def _edge_starts(segment: Segment, rules: AgentRules):
    """Leftmost passable cell in the topmost and bottommost rows that have one."""
    rows_with = {}
    for r, c in _passable_cells(segment, rules):
        rows_with.setdefault(r, c)
    if not rows_with:
        return None, None
    top_row = min(rows_with)
    bottom_row = max(rows_with)
    return (top_row, rows_with[top_row]), (bottom_row, rows_with[bottom_row])


def nearest_passable_corner(segment: Segment, corner: str, rules: AgentRules):
    """Closest passable cell to a geometric corner by Manhattan distance,
    ties broken by row-major scan order; None if the segment has none."""
    cr, cc = _CORNERS[corner]
    best = None
    best_d = math.inf
    for r in range(SEGMENT_SIZE):
        for c in range(SEGMENT_SIZE):
            if segment.grid[r][c] in rules.passable:
                d = abs(r - cr) + abs(c - cc)
                if d < best_d:
                    best, best_d = (r, c), d
    return best


def categorize_segment(segment: Segment, config: TileConfig | None = None) -> str:
    """LR-like or LOZ-like by exclusive-tile majority; shared tiles ignored,
    ties go to LR-like."""
    config = config or default_tile_config()
    lr_chars = config.origin_chars("LR")
    loz_chars = config.origin_chars("LOZ")
    lr = sum(1 for row in segment.grid for ch in row if ch in lr_chars)
    loz = sum(1 for row in segment.grid for ch in row if ch in loz_chars)
    return CATEGORY_LOZ if loz > lr else CATEGORY_LR


def lr_playable(segment: Segment, deadline: Deadline | None = None) -> bool:
    """Gold protocol: from the top or the bottom start, collect at least
    half (ceil) of the gold tiles; gold-free segments count as playable."""
    rules = lr_rules()
    gold_total = sum(row.count("G") for row in segment.grid)
    if gold_total == 0:
        return True
    top, bottom = _edge_starts(segment, rules)
    if top is None:
        return False  # no passable cell anywhere
    need = math.ceil(gold_total / 2)
    for start in dict.fromkeys((top, bottom)):
        _, collected = lr_reachability(segment, start, deadline)
        if len(collected) >= need:
            return True
    return False


def _corner_protocol(segment: Segment, rules: AgentRules,
                     deadline: Deadline | None = None) -> bool:
    successes = 0
    for start_name, goal_name in CORNER_QUERIES:
        start = nearest_passable_corner(segment, start_name, rules)
        goal = nearest_passable_corner(segment, goal_name, rules)
        if start is None or goal is None:
            continue
        if astar_reach(segment, start, goal, rules, deadline):
            successes += 1
    return successes >= 2


def lr_on_loz_playable(segment: Segment, deadline: Deadline | None = None) -> bool:
    """Corner protocol with platformer movement, for LOZ-like segments."""
    return _corner_protocol(segment, lr_rules(), deadline)


def loz_playable(segment: Segment, deadline: Deadline | None = None) -> bool:
    """Corner protocol with free four-direction movement; applies to any segment."""
    return _corner_protocol(segment, loz_rules(), deadline)


@dataclass(frozen=True)
class SegmentVerdict:
    segment_id: str
    category: str
    lr_playable: bool
    loz_playable: bool


@dataclass(frozen=True)
class PlayabilityReport:
    n: int
    lr_like: int
    loz_like: int
    lr_astar_pct: float
    loz_astar_pct: float
    per_segment: tuple[SegmentVerdict, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lr_like": self.lr_like,
            "loz_like": self.loz_like,
            "lr_astar_pct": self.lr_astar_pct,
            "loz_astar_pct": self.loz_astar_pct,
            "per_segment": [
                {"id": v.segment_id, "category": v.category,
                 "lr_playable": v.lr_playable, "loz_playable": v.loz_playable}
                for v in self.per_segment
            ],
        }


def evaluate_segment(segment: Segment, config: TileConfig | None = None,
                     deadline: Deadline | None = None) -> SegmentVerdict:
    category = categorize_segment(segment, config)
    if category == CATEGORY_LR:
        lr_ok = lr_playable(segment, deadline)
    else:
        lr_ok = lr_on_loz_playable(segment, deadline)
    return SegmentVerdict(
        segment_id=segment.id,
        category=category,
        lr_playable=lr_ok,
        loz_playable=loz_playable(segment, deadline),
    )


def playability_report(segments, config: TileConfig | None = None) -> PlayabilityReport:
    """Pooled percentages: LR A* over its per-category protocols, LOZ A* over all."""
    segments = list(segments)
    if not segments:
        raise EmptyInput("playability_report needs at least one segment")
    verdicts = tuple(evaluate_segment(s, config) for s in segments)
    n = len(verdicts)
    lr_like = sum(1 for v in verdicts if v.category == CATEGORY_LR)
    return PlayabilityReport(
        n=n,
        lr_like=lr_like,
        loz_like=n - lr_like,
        lr_astar_pct=100.0 * sum(v.lr_playable for v in verdicts) / n,
        loz_astar_pct=100.0 * sum(v.loz_playable for v in verdicts) / n,
        per_segment=verdicts,
    )
