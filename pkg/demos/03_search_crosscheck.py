"""Cross-check the database against best-first search and brute force.

Three independent roads to the same answer:
  - the database, built once for all starts by fixed-point iteration,
  - MOA*, a best-first multi-objective search run per start,
  - on tiny maps, literal enumeration of every simple path.
"""

import random

from cellplan import (
    brute_force,
    build_database,
    free_cells,
    moa_star,
    pareto_front_at,
    random_map,
)

# database front vs MOA* front on a batch of seeded maps
checked = 0
for seed in range(10):
    grid = random_map(seed, 15, 15, 0.25, 3)
    fc = free_cells(grid)
    goal = [fc[len(fc) // 2]]
    db = build_database(grid, goal)
    for start in random.Random(seed).sample(fc, 4):
        front, paths = moa_star(grid, start, goal)
        assert front == pareto_front_at(db, start)
        checked += 1
print(f"MOA* agrees with the database on {checked} starts across 10 maps")

# on a map small enough to enumerate, brute force agrees too
grid = random_map(3, 4, 4, 0.2, 4)
fc = free_cells(grid)
goal = [fc[-1]]
db = build_database(grid, goal)
for start in fc:
    want = brute_force(grid, start, goal, cell_budget=16)
    assert pareto_front_at(db, start) == want.front
print(f"brute force agrees on all {len(fc)} starts of a 4x4 map")

# MOA* also reconstructs the optimal paths themselves
start = fc[0]
front, paths = moa_star(grid, start, goal)
print(f"\nfrom {start}: {len(front)} vectors, {len(paths)} optimal paths")
for cells, vec in paths[:3]:
    print(f"  {vec}: {' -> '.join(map(str, cells))}")
