"""When does one database build beat running a search per start?

A per-start search answers one question; the database answers all of them.
amortization_table measures both on the same map and extrapolates: build
cost is paid once, lookups are near-free, so past a handful of starts the
database wins by orders of magnitude.
"""

from cellplan import amortization_table, free_cells, random_map

grid = random_map(7, 40, 40, 0.2, 4)
goal = [free_cells(grid)[-1]]

table = amortization_table(grid, goal, 6)

print(f"build: {table['build_time'] * 1e3:.1f} ms")
print(f"single search (mean of {table['sampled_starts']}): "
      f"{table['mean_moa_time'] * 1e3:.1f} ms")
print(f"single lookup: {table['mean_query_time'] * 1e6:.1f} us")
print(f"candidate starts on this map: {table['n_free_non_goal_cells']}\n")

print(f"{'n_starts':>9} {'search total':>13} {'build+lookups':>14}")
for row in table["rows"]:
    print(f"{row['n_starts']:>9} {row['est_moa_total_time'] * 1e3:>11.1f} ms "
          f"{row['db_build_plus_query_time'] * 1e3:>11.1f} ms")
