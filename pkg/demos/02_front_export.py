"""Export a Pareto front as JSON and CSV, plus coverage as ASCII and PGM.

Seeded generation makes the whole pipeline reproducible: the same seed
always yields the same map, the same database, and byte-identical exports.
"""

import json
from pathlib import Path

from cellplan import (
    build_database,
    count_paths,
    coverage,
    free_cells,
    pareto_front_at,
    random_map,
    render_coverage_ascii,
    render_coverage_pgm,
    render_front_csv,
    render_report_json,
)

grid = random_map(42, 18, 24, 0.25, 6)
fc = free_cells(grid)
goal = [fc[-1]]
db = build_database(grid, goal)

# pick the first cell that can actually reach the goal
start = next(c for c in fc if c not in db.goal.cells and db.front(c))
front = pareto_front_at(db, start)
res = count_paths(db, grid, start)
covered = coverage(db, grid, start)

out = Path("front_export")
out.mkdir(exist_ok=True)

report = render_report_json(start, front, counts=res.counts,
                            total_paths=res.total_paths,
                            coverage_cells=covered)
(out / "report.json").write_bytes(report)
(out / "front.csv").write_text(render_front_csv(front))
(out / "coverage.pgm").write_bytes(render_coverage_pgm(grid, covered))

print(f"start {start}, goal {goal[0]}: {len(front)} front vectors, "
      f"{res.total_paths} optimal paths")
print(f"wrote {out}/report.json, {out}/front.csv, {out}/coverage.pgm")

# the JSON is plain data, ready for plotting elsewhere
parsed = json.loads(report)
print("first vectors:", parsed["front"][:5])

# S = start, G = goal, * = on some optimal path, # = obstacle
print(render_coverage_ascii(grid, start, db.goal.cells, covered))
