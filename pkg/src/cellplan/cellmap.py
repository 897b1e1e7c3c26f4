"""Global cost-to-go database: for every free cell, the non-dominated set of
(path length, terrain cost) vectors over all routes into a goal region.

The database is the least fixed point of the per-cell update

    labels[i] <- nondominated({(0, 0)} if i is a goal cell else {}
                              | {F + hop_cost(i, j) for free neighbors j,
                                                        F in labels[j]})

A hop i -> j costs (step_length(i, j), terrain(i)): the hop length plus the
terrain of the cell being departed. Unrolled along a path this counts the
terrain of every cell except the final goal cell (the start included), and it
pins goal label sets to exactly {(0, 0)}.

Two schedules compute the same fixed point:

* "sweep": synchronous full sweeps from empty sets until one changes nothing.
  `iterations` counts the sweeps that changed at least one label set.
* "worklist": a lexicographic best-first priority worklist that settles each
  final vector exactly once; much faster. It reports the identical
  `iterations` value, recovered afterwards as 1 + the largest hop count any
  stored vector needs.

Every cyclic detour strictly increases path length without lowering terrain
cost, so only simple paths contribute and both schedules terminate.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush

from .grid import (
    DIAGONAL_STEP,
    STRAIGHT_STEP,
    NEIGHBOR_OFFSETS,
    Cell,
    GoalRegion,
    GridMap,
    map_digest,
    overflow_risk,
    step_length,
)
from .pareto import CostOverflowError, LabelSet, Vector, nondominated

DB_VERSION = 1

# Identifies the cost accounting the database was built under, so readers can
# reject a file whose vectors mean something else.
CONVENTION_TAG = "len10-14/terrain-of-departed-cell/goal-zero"


class DigestMismatchError(ValueError):
    """Database was built from a different map than the one supplied."""


@dataclass
class Database:
    """Fixed-point label sets plus build metadata.

    `labels` holds only non-empty sets; obstacles and unreachable free cells
    are simply absent.
    """

    labels: dict[Cell, LabelSet]
    goal: GoalRegion
    map_digest: str
    iterations: int
    convention_tag: str = CONVENTION_TAG

    def front(self, cell: Cell) -> LabelSet:
        return self.labels.get(tuple(cell), ())


def hop_cost(grid: GridMap, src: Cell, dst: Cell) -> Vector:
    """Objective increment for the hop src -> dst: (step length, terrain(src))."""
    src = tuple(src)
    dst = tuple(dst)
    if not grid.is_free(src) or not grid.is_free(dst):
        raise ValueError("hop endpoints must be free in-bounds cells")
    return (step_length(src, dst), int(grid.terrain[src]))


def _flat_tables(grid: GridMap):
    """Flat-index terrain, obstacle, and neighbor tables for the kernels."""
    rows, cols = grid.n_rows, grid.n_cols
    obst = grid.obstacle.ravel().tolist()
    terr = grid.terrain.ravel().tolist()
    corner_cut = grid.allow_corner_cut
    nbrs: list[tuple[tuple[int, int], ...]] = [()] * (rows * cols)
    for r in range(rows):
        base = r * cols
        for c in range(cols):
            i = base + c
            if obst[i]:
                continue
            acc = []
            for dr, dc in NEIGHBOR_OFFSETS:
                rr, cc = r + dr, c + dc
                if not (0 <= rr < rows and 0 <= cc < cols):
                    continue
                j = rr * cols + cc
                if obst[j]:
                    continue
                if dr and dc:
                    if not corner_cut and (obst[base + cc] or obst[rr * cols + c]):
                        continue
                    acc.append((j, DIAGONAL_STEP))
                else:
                    acc.append((j, STRAIGHT_STEP))
            nbrs[i] = tuple(acc)
    return terr, obst, nbrs


def _skyline(cands: list) -> LabelSet:
    """Non-dominated subset of 2-vectors; sorts in place."""
    cands.sort()
    out = []
    best = None
    for v in cands:
        if best is None or v[1] < best:
            out.append(v)
            best = v[1]
    return tuple(out)


def _build_sweep(grid: GridMap, goal_ids: list[int], threads: int):
    """Synchronous Jacobi sweeps until nothing changes.

    Cells are only recomputed when a neighbor changed in the previous sweep;
    unchanged inputs provably reproduce the old value, so the sweep sequence
    is identical to the naive full recomputation.
    """
    terr, obst, nbrs = _flat_tables(grid)
    n = len(terr)
    goal_set = set(goal_ids)
    labels: list[LabelSet] = [()] * n
    recompute = [i for i in range(n) if not obst[i]]
    iterations = 0

    def update(i: int) -> LabelSet:
        cands = [(0, 0)] if i in goal_set else []
        ti = terr[i]
        for j, dz in nbrs[i]:
            for a, b in labels[j]:
                cands.append((a + dz, b + ti))
        return _skyline(cands)

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while recompute:
            if pool is None:
                updated = [(i, update(i)) for i in recompute]
            else:
                chunk = max(1, len(recompute) // threads)
                updated = list(zip(recompute, pool.map(update, recompute, chunksize=chunk)))
            changed = [(i, ls) for i, ls in updated if ls != labels[i]]
            if not changed:
                break
            iterations += 1
            nxt = set()
            for i, ls in changed:
                labels[i] = ls
                for j, _dz in nbrs[i]:
                    nxt.add(j)
            recompute = sorted(nxt)
    finally:
        if pool is not None:
            pool.shutdown()
    return labels, iterations


def _build_worklist(grid: GridMap, goal_ids: list[int]):
    """Label-setting worklist: pop (f1, f2, cell) keys in lexicographic order.

    A popped vector is final iff its f2 beats the last one settled at its
    cell, because pops arrive in non-decreasing f1 order. Heap keys are packed
    into single ints to keep comparisons cheap.
    """
    terr, obst, nbrs = _flat_tables(grid)
    n = len(terr)
    mt = max((terr[i] for i in range(n) if not obst[i]), default=0)
    f2_cap = mt * n
    cell_bits = max(1, (n - 1).bit_length())
    f2_bits = max(1, f2_cap.bit_length())
    s2 = cell_bits
    s1 = cell_bits + f2_bits
    cell_mask = (1 << cell_bits) - 1
    f2_mask = (1 << f2_bits) - 1

    inf = f2_cap + 1
    last_f2 = [inf] * n
    acc: list[list] = [[] for _ in range(n)]
    heap = list(goal_ids)  # (0, 0, g) packs to just g
    heapify(heap)
    while heap:
        key = heappop(heap)
        c = key & cell_mask
        f2 = (key >> s2) & f2_mask
        if f2 >= last_f2[c]:
            continue
        f1 = key >> s1
        acc[c].append((f1, f2))
        last_f2[c] = f2
        for i, dz in nbrs[c]:
            nf2 = f2 + terr[i]
            if nf2 >= last_f2[i]:
                continue
            heappush(heap, ((f1 + dz) << s1) | (nf2 << s2) | i)
    labels = [tuple(a) for a in acc]
    goal_set = set(goal_ids)
    return labels, _iteration_count(labels, nbrs, terr, goal_set)


def _iteration_count(labels, nbrs, terr, goal_set) -> int:
    """Sweep count the synchronous schedule would report for these labels.

    That count equals 1 + max over stored vectors of the fewest hops needed
    to realize them, computed by a DP over states in increasing-f1 order
    (every decomposition strictly decreases f1).
    """
    states = []
    for c, ls in enumerate(labels):
        for f1, f2 in ls:
            states.append((f1, f2, c))
    if not states:
        return 0
    states.sort()
    depths: list[dict | None] = [None] * len(labels)
    maxd = 0
    for f1, f2, c in states:
        if c in goal_set:
            d = 0
        else:
            tc = terr[c]
            best = None
            for j, dz in nbrs[c]:
                dmap = depths[j]
                if not dmap:
                    continue
                dj = dmap.get((f1 - dz, f2 - tc))
                if dj is not None and (best is None or dj < best):
                    best = dj
            if best is None:
                raise RuntimeError(f"vector ({f1}, {f2}) at flat cell {c} does not decompose")
            d = best + 1
        dmap = depths[c]
        if dmap is None:
            dmap = {}
            depths[c] = dmap
        dmap[(f1, f2)] = d
        if d > maxd:
            maxd = d
    return maxd + 1


def build_database(grid: GridMap, goal, *, schedule: str = "worklist",
                   threads: int = 1) -> Database:
    """Build the cost-to-go database for `goal` over `grid`.

    One build serves any number of goal cells. `threads` applies to the sweep
    schedule only (updates within a sweep are independent, so any thread
    count yields the identical database); the worklist schedule is
    sequential.
    """
    region = goal if isinstance(goal, GoalRegion) else GoalRegion(goal)
    region.validate_on(grid)
    if schedule not in ("sweep", "worklist"):
        raise ValueError(f"unknown schedule {schedule!r}")
    if threads < 1:
        raise ValueError("threads must be at least 1")
    if overflow_risk(grid):
        raise CostOverflowError("terrain costs could overflow a path sum; rescale the map")
    cols = grid.n_cols
    goal_ids = sorted(r * cols + c for r, c in region.cells)
    if schedule == "sweep":
        flat, iterations = _build_sweep(grid, goal_ids, threads)
    else:
        flat, iterations = _build_worklist(grid, goal_ids)
    labels = {divmod(i, cols): ls for i, ls in enumerate(flat) if ls}
    return Database(labels=labels, goal=region, map_digest=map_digest(grid),
                    iterations=iterations)


def verify_database(db: Database, grid: GridMap) -> bool:
    """Check that `db` is exactly the fixed point for `grid`.

    Verifies goal seeds, canonical label sets, that every non-goal vector
    decomposes through some neighbor, and that one more synchronous sweep
    changes nothing. Raises DigestMismatchError when `grid` is not the map
    the database was built from.
    """
    if db.map_digest != map_digest(grid):
        raise DigestMismatchError("database digest does not match this map")
    rows, cols = grid.n_rows, grid.n_cols
    terr, obst, nbrs = _flat_tables(grid)
    n = rows * cols
    flat: list[LabelSet] = [()] * n
    for cell, ls in db.labels.items():
        r, c = cell
        if not (0 <= r < rows and 0 <= c < cols):
            return False
        i = r * cols + c
        if obst[i]:
            return False
        ls = tuple(tuple(v) for v in ls)
        if nondominated(ls) != ls:
            return False
        flat[i] = ls
    goal_ids = {r * cols + c for r, c in db.goal.cells}
    for g in goal_ids:
        if flat[g] != ((0, 0),):
            return False
    sets = [set(ls) for ls in flat]
    for i in range(n):
        if obst[i] or i in goal_ids:
            continue
        ti = terr[i]
        for f1, f2 in flat[i]:
            if not any((f1 - dz, f2 - ti) in sets[j] for j, dz in nbrs[i]):
                return False
    for i in range(n):
        if obst[i]:
            continue
        cands = [(0, 0)] if i in goal_ids else []
        ti = terr[i]
        for j, dz in nbrs[i]:
            for a, b in flat[j]:
                cands.append((a + dz, b + ti))
        if _skyline(cands) != flat[i]:
            return False
    return True


def save_database(db: Database) -> bytes:
    """Canonical JSON bytes; identical databases serialize identically."""
    cells = sorted(db.labels)
    labels_obj = {
        f"{r},{c}": [list(v) for v in db.labels[(r, c)]]
        for (r, c) in cells
        if db.labels[(r, c)]
    }
    payload = {
        "version": DB_VERSION,
        "map_digest": db.map_digest,
        "convention_tag": db.convention_tag,
        "goal": [list(cell) for cell in sorted(db.goal.cells)],
        "iterations": db.iterations,
        "labels": labels_obj,
    }
    return json.dumps(payload, separators=(",", ":")).encode("utf-8") + b"\n"


def _as_cell(obj) -> Cell:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj)):
        raise ValueError(f"bad cell {obj!r}")
    return (obj[0], obj[1])


def load_database(raw) -> Database:
    """Parse database JSON; inverse of save_database."""
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed database JSON: {e}") from e
    if not isinstance(payload, dict):
        raise ValueError("database JSON must be an object")
    version = payload.get("version")
    if version != DB_VERSION:
        raise ValueError(f"unsupported database version: {version!r}")
    digest = payload.get("map_digest")
    if not isinstance(digest, str) or not digest:
        raise ValueError("map digest missing")
    tag = payload.get("convention_tag")
    if not isinstance(tag, str) or not tag:
        raise ValueError("convention tag missing")
    iterations = payload.get("iterations")
    if not isinstance(iterations, int) or isinstance(iterations, bool) or iterations < 0:
        raise ValueError("iterations must be a non-negative integer")
    goal_raw = payload.get("goal")
    if not isinstance(goal_raw, list) or not goal_raw:
        raise ValueError("goal cell list missing")
    goal = GoalRegion(_as_cell(c) for c in goal_raw)
    labels_raw = payload.get("labels")
    if not isinstance(labels_raw, dict):
        raise ValueError("labels object missing")
    labels: dict[Cell, LabelSet] = {}
    for key, vecs in labels_raw.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad label key {key!r}")
        try:
            cell = (int(parts[0]), int(parts[1]))
        except ValueError as e:
            raise ValueError(f"bad label key {key!r}") from e
        if not isinstance(vecs, list):
            raise ValueError(f"labels for {key!r} must be a list")
        out = []
        for v in vecs:
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in v)):
                raise ValueError(f"bad vector {v!r} for cell {key!r}")
            out.append((v[0], v[1]))
        if out:
            labels[cell] = tuple(out)
    return Database(labels=labels, goal=goal, map_digest=digest,
                    iterations=iterations, convention_tag=tag)
