"""Build a cost-to-go database for a tiny map and ask it everything.

A 2x3 map with one expensive cell is small enough to reason about by hand:
from the top-left corner there are exactly two sensible routes to the
top-right goal, one short but costly, one longer but free. Neither beats
the other on both objectives, so the front keeps both.
"""

from cellplan import (
    build_database,
    count_paths,
    coverage,
    enumerate_paths,
    parse_map,
    pareto_front_at,
)

MAP_TEXT = """\
2 3
0 5 0
0 0 0
"""

grid = parse_map(MAP_TEXT)
goal = [(0, 2)]

# One build serves every start cell at once.
db = build_database(grid, goal)
print(f"built in {db.iterations} iterations, {len(db.labels)} cells reach the goal")

# The stored label set at each cell is its full Pareto front to the goal.
for cell in sorted(db.labels):
    print(f"  labels[{cell}] = {db.labels[cell]}")

start = (0, 0)
front = pareto_front_at(db, start)
print(f"\nfront at {start}: {front}")

# Exact path counts come from a DP over (cell, vector) states, no enumeration.
res = count_paths(db, grid, start)
for vec in res.front:
    print(f"  {res.counts[vec]} optimal path(s) with cost {vec}")
print(f"  total: {res.total_paths}")

# Enumeration is bounded and deterministic; here we can afford all of them.
paths, truncated = enumerate_paths(db, grid, start)
assert not truncated
for cells, vec in paths:
    print(f"  {vec}: {' -> '.join(map(str, cells))}")

# Coverage is the union of cells on any optimal path from the start.
print(f"coverage from {start}: {sorted(coverage(db, grid, start))}")
