"""Grid world model: rectangular cell maps with terrain costs and obstacles.

Cells are addressed as 0-based (row, col) tuples. Every free cell carries a
non-negative integer terrain cost; obstacles are never traversed. Motion uses
the 8-neighborhood with integer step lengths (10 straight, 14 diagonal), so
all path costs stay exact.

Map file format (UTF-8 text):

    <n_rows> <n_cols>
    <token> ... <token>      one line per row, n_cols whitespace-separated tokens
    ...

where a token is either ``#`` (obstacle) or a non-negative decimal terrain
cost. A trailing newline is required and comments are not supported.
"""

from __future__ import annotations

import hashlib
import random

import numpy as np

from .pareto import MAX_COMPONENT

Cell = tuple[int, int]

STRAIGHT_STEP = 10
DIAGONAL_STEP = 14

# Row-major scan over the eight surrounding offsets. Everything downstream
# (neighbor lists, successor expansion, path enumeration) inherits this order,
# which is what keeps outputs reproducible byte for byte.
NEIGHBOR_OFFSETS: tuple[Cell, ...] = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)


class MapFormatError(ValueError):
    """Map text that does not follow the map file format."""


class GridMap:
    """Rectangular grid with per-cell terrain cost and obstacle mask.

    Instances are value objects: construct once, then treat as read-only.
    `allow_corner_cut` controls whether a diagonal move may pass between two
    diagonally touching obstacles (allowed by default).
    """

    __slots__ = ("terrain", "obstacle", "allow_corner_cut")

    def __init__(self, terrain, obstacle, allow_corner_cut: bool = True):
        terrain = np.ascontiguousarray(np.asarray(terrain, dtype=np.int64))
        obstacle = np.ascontiguousarray(np.asarray(obstacle, dtype=bool))
        if terrain.ndim != 2 or terrain.size == 0:
            raise ValueError("terrain must be a non-empty 2D array")
        if obstacle.shape != terrain.shape:
            raise ValueError("obstacle mask shape must match terrain shape")
        if (terrain < 0).any():
            raise ValueError("terrain costs must be non-negative")
        self.terrain = terrain
        self.obstacle = obstacle
        self.allow_corner_cut = bool(allow_corner_cut)

    @property
    def n_rows(self) -> int:
        return self.terrain.shape[0]

    @property
    def n_cols(self) -> int:
        return self.terrain.shape[1]

    def in_bounds(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.n_rows and 0 <= c < self.n_cols

    def is_free(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and not self.obstacle[tuple(cell)]

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return (
            self.allow_corner_cut == other.allow_corner_cut
            and self.terrain.shape == other.terrain.shape
            and np.array_equal(self.terrain, other.terrain)
            and np.array_equal(self.obstacle, other.obstacle)
        )

    def __repr__(self):
        return f"GridMap({self.n_rows}x{self.n_cols}, free={self.terrain.size - int(self.obstacle.sum())})"


class GoalRegion:
    """Non-empty set of goal cells; the region may be disconnected."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        cs = frozenset((int(r), int(c)) for r, c in cells)
        if not cs:
            raise ValueError("goal region must contain at least one cell")
        self.cells = cs

    def validate_on(self, grid: GridMap) -> None:
        """Raise ValueError unless every goal cell is a free in-bounds cell."""
        for cell in sorted(self.cells):
            if not grid.in_bounds(cell):
                raise ValueError(f"goal cell {cell} is out of bounds")
            if grid.obstacle[cell]:
                raise ValueError(f"goal cell {cell} is an obstacle")

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.cells

    def __eq__(self, other):
        if not isinstance(other, GoalRegion):
            return NotImplemented
        return self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"GoalRegion({self.sorted_cells()})"


def require_free(grid: GridMap, cell: Cell) -> None:
    """Raise ValueError unless `cell` is an in-bounds free cell."""
    cell = tuple(cell)
    if not grid.in_bounds(cell):
        raise ValueError(f"cell {cell} is out of bounds")
    if grid.obstacle[cell]:
        raise ValueError(f"cell {cell} is an obstacle")


def neighbors(grid: GridMap, cell: Cell) -> list[tuple[Cell, int]]:
    """Free 8-neighbors of `cell` with their step lengths, in row-major order.

    With allow_corner_cut=False a diagonal move is dropped when either of the
    two orthogonal cells it shares with `cell` is an obstacle, so paths cannot
    squeeze between two diagonally touching obstacles.
    """
    require_free(grid, cell)
    r, c = cell
    rows, cols = grid.n_rows, grid.n_cols
    obst = grid.obstacle
    out = []
    for dr, dc in NEIGHBOR_OFFSETS:
        rr, cc = r + dr, c + dc
        if not (0 <= rr < rows and 0 <= cc < cols) or obst[rr, cc]:
            continue
        if dr and dc:
            if not grid.allow_corner_cut and (obst[r, cc] or obst[rr, c]):
                continue
            out.append(((rr, cc), DIAGONAL_STEP))
        else:
            out.append(((rr, cc), STRAIGHT_STEP))
    return out


def step_length(a: Cell, b: Cell) -> int:
    """Length of the hop between two distinct 8-adjacent cells."""
    dr = abs(a[0] - b[0])
    dc = abs(a[1] - b[1])
    if (dr, dc) == (0, 0) or dr > 1 or dc > 1:
        raise ValueError(f"cells {tuple(a)} and {tuple(b)} are not 8-adjacent")
    return DIAGONAL_STEP if dr == 1 and dc == 1 else STRAIGHT_STEP


def free_cells(grid: GridMap) -> list[Cell]:
    """All free cells in row-major order."""
    return [(int(r), int(c)) for r, c in np.argwhere(~grid.obstacle)]


def overflow_risk(grid: GridMap) -> bool:
    """True when a worst-case simple-path cost sum could exceed MAX_COMPONENT."""
    n = int(grid.terrain.size)
    free = grid.terrain[~grid.obstacle]
    mt = int(free.max()) if free.size else 0
    return mt * n > MAX_COMPONENT or DIAGONAL_STEP * n > MAX_COMPONENT


def parse_map(data, allow_corner_cut: bool = True) -> GridMap:
    """Parse map file content (bytes or str) into a GridMap.

    The file format carries no corner-cut field; the policy is chosen at parse
    time and folded into map_digest. Raises MapFormatError on any malformed
    input: bad dimension line, row or token count mismatches, invalid tokens,
    a missing trailing newline, or terrain large enough to risk overflowing
    path-cost sums.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as e:
            raise MapFormatError(f"map is not valid UTF-8: {e}") from e
    else:
        text = data
    if not text.endswith("\n"):
        raise MapFormatError("map text must end with a newline")
    lines = text.split("\n")
    header = lines[0].split()
    if len(header) != 2:
        raise MapFormatError(f"dimension line has {len(header)} tokens, expected 2")
    dims = []
    for tok in header:
        if not (tok.isascii() and tok.isdigit()):
            raise MapFormatError(f"bad dimension token {tok!r}")
        dims.append(int(tok))
    n_rows, n_cols = dims
    if n_rows < 1 or n_cols < 1:
        raise MapFormatError("dimensions must be positive")
    # After the trailing newline, split() leaves one final empty element.
    if len(lines) != n_rows + 2 or lines[-1] != "":
        raise MapFormatError(f"expected {n_rows} data rows")
    terrain = np.zeros((n_rows, n_cols), dtype=np.int64)
    obstacle = np.zeros((n_rows, n_cols), dtype=bool)
    for r in range(n_rows):
        toks = lines[r + 1].split()
        if len(toks) != n_cols:
            raise MapFormatError(f"row {r} has {len(toks)} tokens, expected {n_cols}")
        for c, tok in enumerate(toks):
            if tok == "#":
                obstacle[r, c] = True
            elif tok.isascii() and tok.isdigit():
                terrain[r, c] = int(tok)
            else:
                raise MapFormatError(f"bad token {tok!r} at row {r}, column {c}")
    grid = GridMap(terrain, obstacle, allow_corner_cut=allow_corner_cut)
    if overflow_risk(grid):
        raise MapFormatError("terrain costs could overflow a path sum; rescale the map")
    return grid


def serialize_map(grid: GridMap) -> bytes:
    """Canonical map file bytes; parse_map(serialize_map(g)) == g."""
    rows = [f"{grid.n_rows} {grid.n_cols}"]
    for r in range(grid.n_rows):
        toks = [
            "#" if grid.obstacle[r, c] else str(int(grid.terrain[r, c]))
            for c in range(grid.n_cols)
        ]
        rows.append(" ".join(toks))
    return ("\n".join(rows) + "\n").encode("utf-8")


def map_digest(grid: GridMap) -> str:
    """Content hash of a GridMap (map text plus the corner-cut flag)."""
    h = hashlib.sha256()
    h.update(serialize_map(grid))
    h.update(b"corner-cut=%d" % int(grid.allow_corner_cut))
    return h.hexdigest()


def random_map(seed: int, n_rows: int, n_cols: int, obstacle_density: float,
               max_cost: int, *, allow_corner_cut: bool = True) -> GridMap:
    """Deterministic random map: same arguments give the same map anywhere.

    Each cell independently becomes an obstacle with probability
    `obstacle_density`; free cells draw a terrain cost uniformly from
    [0, max_cost]. At least one free cell is guaranteed: if the draw leaves
    none, cell (0, 0) is cleared with terrain 0.
    """
    if n_rows < 1 or n_cols < 1:
        raise ValueError("map dimensions must be positive")
    if not 0.0 <= obstacle_density < 1.0:
        raise ValueError("obstacle_density must lie in [0, 1)")
    if max_cost < 0:
        raise ValueError("max_cost must be non-negative")
    if max_cost * n_rows * n_cols > MAX_COMPONENT:
        raise ValueError("max_cost is large enough to overflow a path sum")
    rng = random.Random(seed)
    terrain = np.zeros((n_rows, n_cols), dtype=np.int64)
    obstacle = np.zeros((n_rows, n_cols), dtype=bool)
    for r in range(n_rows):
        for c in range(n_cols):
            if rng.random() < obstacle_density:
                obstacle[r, c] = True
            else:
                terrain[r, c] = rng.randint(0, max_cost)
    if obstacle.all():
        obstacle[0, 0] = False
        terrain[0, 0] = 0
    return GridMap(terrain, obstacle, allow_corner_cut=allow_corner_cut)
