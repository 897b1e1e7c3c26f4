"""One build can target a whole region, even a disjoint one.

Goal cells all seed the same fixed point with the zero vector, so a
10-cell region costs the same build as a single cell. Fronts then measure
the cost to the nearest-in-the-Pareto-sense part of the region.
"""

from cellplan import (
    GoalRegion,
    build_database,
    coverage,
    free_cells,
    pareto_front_at,
    random_map,
    render_coverage_ascii,
)

grid = random_map(19, 12, 20, 0.2, 4)
fc = free_cells(grid)

# two separate clusters: some cells near the left edge, some near the right
left = [c for c in fc if c[1] <= 1][:4]
right = [c for c in fc if c[1] >= 18][:4]
region = GoalRegion(left + right)
print(f"goal region: {sorted(region.cells)}")

db = build_database(grid, region)
print(f"one build, {db.iterations} iterations, serves all "
      f"{len(region.cells)} goal cells\n")

# a cell in the middle can head either way; the front decides on merit
start = next(c for c in fc if 8 <= c[1] <= 11 and db.front(c))
front = pareto_front_at(db, start)
print(f"front at {start}: {front}")

covered = coverage(db, grid, start)
sides = {"left" if c[1] < 10 else "right" for c in covered if c in region.cells}
print(f"optimal paths from {start} end on the {' and '.join(sorted(sides))}\n")

print(render_coverage_ascii(grid, start, region.cells, covered))
