"""Independent brute-force oracles the tests check the implementation against.

Everything here is written from first principles on purpose: plain loops,
no imports from the package's metric/search code, so disagreements point at
real defects rather than shared bugs.
"""

import math

GRID = 16
LR_OPEN = set(".-#GSE")
LOZ_OPEN = set(".-#GSED")


# ---- nearest neighbor --------------------------------------------------------

def nearest_scan(vector, chars, vectors):
    """Exhaustive L1 scan; ties broken by smallest character."""
    best_char, best_dist = None, None
    for char, vec in zip(chars, vectors):
        dist = sum(abs(a - b) for a, b in zip(vector, vec))
        if best_dist is None or dist < best_dist or (dist == best_dist and char < best_char):
            best_char, best_dist = char, dist
    return best_char, best_dist


# ---- least squares -----------------------------------------------------------

def line_fit_mse(xs, ys):
    """Residual MSE of the closed-form least-squares line."""
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    var_x = sum((x - mean_x) ** 2 for x in xs) / n
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / n
    slope = cov / var_x if var_x > 0 else 0.0
    intercept = mean_y - slope * mean_x
    return sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys)) / n


# ---- energy distance ---------------------------------------------------------

def energy_distance_loops(a_rows, b_rows):
    def mean_pair(xs, ys):
        total = 0.0
        for x in xs:
            for y in ys:
                total += math.sqrt(sum((xi - yi) ** 2 for xi, yi in zip(x, y)))
        return total / (len(xs) * len(ys))

    return 2 * mean_pair(a_rows, b_rows) - mean_pair(a_rows, a_rows) - mean_pair(b_rows, b_rows)


# ---- platformer agent oracle ---------------------------------------------------

def _lr_search(grid, start):
    """(resolved cells, every cell occupied) under the platformer rules,
    with the dig fixpoint run to completion."""
    dug = set()

    def open_cell(r, c):
        return 0 <= r < GRID and 0 <= c < GRID and (grid[r][c] in LR_OPEN or (r, c) in dug)

    def standing(r, c):
        if grid[r][c] in "#-":
            return True
        if r == GRID - 1:
            return True
        return not open_cell(r + 1, c)

    def settle(r, c, trail):
        trail.add((r, c))
        while not standing(r, c):
            r += 1
            trail.add((r, c))
        return r, c

    while True:
        trail = set()
        home = settle(start[0], start[1], trail)
        seen = {home}
        stack = [home]
        while stack:
            r, c = stack.pop()
            steps = []
            for dc in (-1, 1):
                if open_cell(r, c + dc):
                    steps.append(settle(r, c + dc, trail))
            if grid[r][c] == "#":
                if open_cell(r - 1, c):
                    steps.append(settle(r - 1, c, trail))
                if open_cell(r + 1, c):
                    steps.append(settle(r + 1, c, trail))
            for pos in steps:
                if pos not in seen:
                    seen.add(pos)
                    stack.append(pos)
        fresh = set()
        for r, c in seen:
            for dc in (-1, 1):
                rr, cc = r + 1, c + dc
                if 0 <= rr < GRID and 0 <= cc < GRID and open_cell(r, cc) \
                        and grid[rr][cc] == "b" and (rr, cc) not in dug:
                    fresh.add((rr, cc))
        if fresh <= dug:
            return seen, trail
        dug |= fresh


def _starts(grid, open_set):
    cells = [(r, c) for r in range(GRID) for c in range(GRID) if grid[r][c] in open_set]
    if not cells:
        return None, None
    top_row = min(r for r, _ in cells)
    bottom_row = max(r for r, _ in cells)
    top = (top_row, min(c for r, c in cells if r == top_row))
    bottom = (bottom_row, min(c for r, c in cells if r == bottom_row))
    return top, bottom


def oracle_lr_verdict(grid):
    golds = {(r, c) for r in range(GRID) for c in range(GRID) if grid[r][c] == "G"}
    if not golds:
        return True
    top, bottom = _starts(grid, LR_OPEN)
    if top is None:
        return False
    need = (len(golds) + 1) // 2
    for start in {top, bottom}:
        _, trail = _lr_search(grid, start)
        if len(trail & golds) >= need:
            return True
    return False


def _corner_cell(grid, corner, open_set):
    targets = {"TL": (0, 0), "TR": (0, GRID - 1), "BL": (GRID - 1, 0), "BR": (GRID - 1, GRID - 1)}
    tr, tc = targets[corner]
    best, best_d = None, None
    for r in range(GRID):
        for c in range(GRID):
            if grid[r][c] in open_set:
                d = abs(r - tr) + abs(c - tc)
                if best_d is None or d < best_d:
                    best, best_d = (r, c), d
    return best


def oracle_lr_on_loz_verdict(grid):
    wins = 0
    for s, g in (("BL", "TR"), ("BR", "TL"), ("TL", "BR"), ("TR", "BL")):
        start = _corner_cell(grid, s, LR_OPEN)
        goal = _corner_cell(grid, g, LR_OPEN)
        if start is None or goal is None:
            continue
        _, trail = _lr_search(grid, start)
        if goal in trail:
            wins += 1
    return wins >= 2


# ---- dungeon agent oracle -----------------------------------------------------

def _loz_flood(grid, start):
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < GRID and 0 <= cc < GRID and grid[rr][cc] in LOZ_OPEN \
                    and (rr, cc) not in seen:
                seen.add((rr, cc))
                stack.append((rr, cc))
    return seen


def oracle_loz_verdict(grid):
    wins = 0
    for s, g in (("BL", "TR"), ("BR", "TL"), ("TL", "BR"), ("TR", "BL")):
        start = _corner_cell(grid, s, LOZ_OPEN)
        goal = _corner_cell(grid, g, LOZ_OPEN)
        if start is None or goal is None:
            continue
        if goal in _loz_flood(grid, start):
            wins += 1
    return wins >= 2


# ---- category -----------------------------------------------------------------

def oracle_category(grid):
    lr = sum(row.count(ch) for row in grid for ch in "b-#G")
    loz = sum(row.count(ch) for row in grid for ch in "FPIODSW")
    return "LOZ-like" if loz > lr else "LR-like"
