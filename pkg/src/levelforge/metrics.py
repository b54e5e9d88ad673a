"""Per-segment tile metrics and the energy distance between metric sets.

Tile sets follow the unified-table affordances by default and are
configurable. All proportion metrics divide by the 256 segment cells;
non-linearity is the raw mean squared error of a least-squares line fit to
the topmost non-empty tile height of each column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .corpus import SEGMENT_SIZE, Segment
from .errors import EmptyInput, SchemaError

_CELLS = SEGMENT_SIZE * SEGMENT_SIZE

METRIC_NAMES = ("density", "nonlinearity", "leniency", "interestingness", "path_proportion")


@dataclass(frozen=True)
class MetricTileSets:
    density_set: frozenset[str] = frozenset("BbFODWMI")
    hazard_set: frozenset[str] = frozenset("EM")
    interesting_set: frozenset[str] = frozenset("G#-SDP")
    path_set: frozenset[str] = frozenset(".-#GSE")

    @classmethod
    def from_json_file(cls, path) -> "MetricTileSets":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        kwargs = {}
        for key in ("density_set", "hazard_set", "interesting_set", "path_set"):
            if key in raw:
                values = raw[key]
                if not all(isinstance(c, str) and len(c) == 1 for c in values):
                    raise SchemaError(f"{key} must be a list of single characters")
                kwargs[key] = frozenset(values)
        return cls(**kwargs)


DEFAULT_SETS = MetricTileSets()


@dataclass(frozen=True)
class MetricVector:
    density: float
    nonlinearity: float
    leniency: float
    interestingness: float
    path_proportion: float

    def as_array(self) -> np.ndarray:
        return np.array([self.density, self.nonlinearity, self.leniency,
                         self.interestingness, self.path_proportion])


def _count(segment: Segment, tile_set) -> int:
    return sum(1 for row in segment.grid for ch in row if ch in tile_set)


def density(segment: Segment, sets: MetricTileSets = DEFAULT_SETS) -> float:
    return _count(segment, sets.density_set) / _CELLS


def leniency(segment: Segment, sets: MetricTileSets = DEFAULT_SETS) -> float:
    return 1.0 - _count(segment, sets.hazard_set) / _CELLS


def interestingness(segment: Segment, sets: MetricTileSets = DEFAULT_SETS) -> float:
    return _count(segment, sets.interesting_set) / _CELLS


def path_proportion(segment: Segment, sets: MetricTileSets = DEFAULT_SETS) -> float:
    return _count(segment, sets.path_set) / _CELLS


def top_profile(segment: Segment) -> tuple[list[int], list[int]]:
    """(columns, heights-from-bottom) of the topmost non-'.' tile per column."""
    xs, ys = [], []
    for c in range(SEGMENT_SIZE):
        for r in range(SEGMENT_SIZE):
            if segment.grid[r][c] != ".":
                xs.append(c)
                ys.append(SEGMENT_SIZE - 1 - r)
                break
    return xs, ys


def non_linearity(segment: Segment) -> float:
    """MSE of a least-squares line through the column-top profile.

    Computed in exact rational arithmetic (the profile is integer-valued),
    then rounded once to float, so the value is platform-independent.
    """
    xs, ys = top_profile(segment)
    n = len(xs)
    if n < 2:
        return 0.0
    mean_x = Fraction(sum(xs), n)
    mean_y = Fraction(sum(ys), n)
    var_x = sum((Fraction(x) - mean_x) ** 2 for x in xs) / n
    cov = sum((Fraction(x) - mean_x) * (Fraction(y) - mean_y) for x, y in zip(xs, ys)) / n
    slope = cov / var_x if var_x else Fraction(0)
    intercept = mean_y - slope * mean_x
    mse = sum((Fraction(y) - (slope * Fraction(x) + intercept)) ** 2 for x, y in zip(xs, ys)) / n
    return float(mse)


def metric_vector(segment: Segment, sets: MetricTileSets = DEFAULT_SETS) -> MetricVector:
    return MetricVector(
        density=density(segment, sets),
        nonlinearity=non_linearity(segment),
        leniency=leniency(segment, sets),
        interestingness=interestingness(segment, sets),
        path_proportion=path_proportion(segment, sets),
    )


def e_distance(a_vectors, b_vectors) -> float:
    """Energy distance between two metric-vector samples.

    E = 2*mean||a-b|| - mean||a-a'|| - mean||b-b'||, all means over ordered
    pairs including self-pairs, Euclidean norm, raw (unstandardized) vectors.
    """
    a = _as_matrix(a_vectors)
    b = _as_matrix(b_vectors)
    cross = _mean_pairwise(a, b)
    within_a = _mean_pairwise(a, a)
    within_b = _mean_pairwise(b, b)
    return 2.0 * cross - within_a - within_b


def _as_matrix(vectors) -> np.ndarray:
    rows = [v.as_array() if isinstance(v, MetricVector) else np.asarray(v, dtype=np.float64)
            for v in vectors]
    if not rows:
        raise EmptyInput("e_distance needs non-empty sets")
    return np.stack(rows).astype(np.float64)

def _mean_pairwise(x: np.ndarray, y: np.ndarray) -> float:
    diffs = x[:, None, :] - y[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=2)).mean())


def aggregate(vectors) -> dict:
    """{metric: {mean, std}} across segments (population std)."""
    mat = _as_matrix(vectors)
    return {
        name: {"mean": float(mat[:, i].mean()), "std": float(mat[:, i].std())}
        for i, name in enumerate(METRIC_NAMES)
    }
