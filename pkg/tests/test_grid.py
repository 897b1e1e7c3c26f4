"""Grid model tests: map I/O round-trips, neighborhood geometry, random maps."""

from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellplan.grid import (
    DIAGONAL_STEP,
    STRAIGHT_STEP,
    GoalRegion,
    GridMap,
    MapFormatError,
    free_cells,
    map_digest,
    neighbors,
    parse_map,
    random_map,
    require_free,
    serialize_map,
    step_length,
)

GOLDEN = Path(__file__).parent / "golden"


def test_parse_basic():
    g = parse_map("2 2\n0 1\n# 0\n")
    assert (g.n_rows, g.n_cols) == (2, 2)
    assert g.terrain[0, 1] == 1
    assert g.obstacle[1, 0]
    assert not g.obstacle[0, 0]


def test_parse_minimal():
    g = parse_map("1 1\n0\n")
    assert (g.n_rows, g.n_cols) == (1, 1)
    assert g.is_free((0, 0))


@pytest.mark.parametrize("text,fragment", [
    ("2 2\n0 1\n0\n", "row 1 has 1 tokens"),
    ("2\n0 1\n# 0\n", "dimension line"),
    ("2 2\n0 1\n# 0", "newline"),
    ("2 2\n0 x\n# 0\n", "bad token"),
    ("0 2\n\n", "positive"),
    ("2 2\n0 1\n# 0\n# #\n", "expected 2 data rows"),
    ("a 2\n0 1\n# 0\n", "bad dimension token"),
    ("2 2\n0 -1\n# 0\n", "bad token"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(MapFormatError) as err:
        parse_map(text)
    assert fragment in str(err.value)


def test_parse_rejects_undecodable_bytes():
    with pytest.raises(MapFormatError):
        parse_map(b"\xff\xfe\n")


def test_parse_rejects_overflow_risk():
    big = 2**62
    with pytest.raises(MapFormatError, match="overflow"):
        parse_map(f"1 2\n{big} 0\n")


def test_serialize_examples():
    assert serialize_map(parse_map("1 1\n0\n")) == b"1 1\n0\n"
    assert serialize_map(parse_map("2 2\n0 1\n# 0\n")) == b"2 2\n0 1\n# 0\n"
    assert serialize_map(parse_map("1 2\n0 5\n")) == b"1 2\n0 5\n"


@given(st.integers(0, 2**32))
def test_roundtrip_random_maps(seed):
    g = random_map(seed % 1000, 1 + seed % 5, 1 + (seed // 5) % 6, 0.3, 4)
    data = serialize_map(g)
    g2 = parse_map(data)
    assert g2 == g
    assert serialize_map(g2) == data


def test_roundtrip_noncanonical_whitespace():
    # Extra spacing parses fine; serialization canonicalizes it.
    g = parse_map("2 2\n 0  1\n#   0\n")
    assert serialize_map(g) == b"2 2\n0 1\n# 0\n"


def test_neighbors_center():
    g = parse_map("3 3\n0 0 0\n0 0 0\n0 0 0\n")
    ns = neighbors(g, (1, 1))
    assert len(ns) == 8
    assert sum(1 for _, d in ns if d == STRAIGHT_STEP) == 4
    assert sum(1 for _, d in ns if d == DIAGONAL_STEP) == 4
    cells = [c for c, _ in ns]
    assert cells == sorted(cells)  # row-major order
    assert len(set(cells)) == 8


def test_neighbors_single_cell():
    g = parse_map("1 1\n0\n")
    assert neighbors(g, (0, 0)) == []


def test_neighbors_corner_cut_rule():
    text = "2 2\n0 #\n# 0\n"
    open_map = parse_map(text)
    closed_map = parse_map(text, allow_corner_cut=False)
    assert neighbors(open_map, (0, 0)) == [((1, 1), DIAGONAL_STEP)]
    assert neighbors(closed_map, (0, 0)) == []


@given(st.integers(0, 500))
def test_neighbors_corner_cut_superset(seed):
    g_open = random_map(seed, 4, 4, 0.4, 2)
    g_closed = random_map(seed, 4, 4, 0.4, 2, allow_corner_cut=False)
    for cell in free_cells(g_open):
        closed = neighbors(g_closed, cell)
        opened = neighbors(g_open, cell)
        assert set(closed) <= set(opened)
        for (r, c), _ in opened:
            assert g_open.is_free((r, c))


def test_neighbors_rejects_bad_cells():
    g = parse_map("2 2\n0 1\n# 0\n")
    with pytest.raises(ValueError):
        neighbors(g, (1, 0))
    with pytest.raises(ValueError):
        neighbors(g, (5, 5))


def test_step_length():
    assert step_length((0, 0), (0, 1)) == 10
    assert step_length((0, 0), (1, 1)) == 14
    with pytest.raises(ValueError):
        step_length((0, 0), (0, 2))
    with pytest.raises(ValueError):
        step_length((1, 1), (1, 1))


@given(st.tuples(st.integers(0, 9), st.integers(0, 9)),
       st.sampled_from([(-1, -1), (-1, 0), (-1, 1), (0, -1),
                        (0, 1), (1, -1), (1, 0), (1, 1)]))
def test_step_length_symmetric(cell, off):
    other = (cell[0] + off[0], cell[1] + off[1])
    assert step_length(cell, other) == step_length(other, cell)


def test_free_cells_row_major():
    g = parse_map("2 2\n0 #\n0 0\n")
    assert free_cells(g) == [(0, 0), (1, 0), (1, 1)]


def test_random_map_deterministic():
    a = random_map(7, 4, 4, 0.25, 2)
    b = random_map(7, 4, 4, 0.25, 2)
    assert a == b
    assert serialize_map(a) == serialize_map(b)


def test_random_map_golden_files():
    a = serialize_map(random_map(7, 4, 4, 0.25, 2))
    b = serialize_map(random_map(8, 4, 4, 0.25, 2))
    assert a == (GOLDEN / "seed7_4x4.map").read_bytes()
    assert b == (GOLDEN / "seed8_4x4.map").read_bytes()
    assert a != b


def test_random_map_degenerate_settings():
    g = random_map(7, 4, 4, 0.0, 0)
    assert not g.obstacle.any()
    assert not g.terrain.any()


def test_random_map_always_leaves_a_free_cell():
    for seed in range(40):
        g = random_map(seed, 2, 2, 0.99, 3)
        assert len(free_cells(g)) >= 1


@pytest.mark.parametrize("kw", [
    dict(n_rows=0), dict(n_cols=0), dict(obstacle_density=1.0),
    dict(obstacle_density=-0.1), dict(max_cost=-1),
])
def test_random_map_validation(kw):
    args = dict(seed=1, n_rows=3, n_cols=3, obstacle_density=0.2, max_cost=2)
    args.update(kw)
    with pytest.raises(ValueError):
        random_map(**args)


def test_gridmap_validation():
    with pytest.raises(ValueError):
        GridMap(np.zeros((0, 2), dtype=np.int64), np.zeros((0, 2), dtype=bool))
    with pytest.raises(ValueError):
        GridMap(np.zeros((2, 2)), np.zeros((2, 3), dtype=bool))
    with pytest.raises(ValueError):
        GridMap(np.array([[-1, 0]]), np.zeros((1, 2), dtype=bool))


def test_goal_region():
    region = GoalRegion([(1, 1), (0, 0), (1, 1)])
    assert region.sorted_cells() == [(0, 0), (1, 1)]
    assert (1, 1) in region
    assert (2, 2) not in region
    assert region == GoalRegion([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        GoalRegion([])


def test_goal_region_validate_on():
    g = parse_map("2 2\n0 1\n# 0\n")
    GoalRegion([(0, 0), (1, 1)]).validate_on(g)
    with pytest.raises(ValueError, match="obstacle"):
        GoalRegion([(1, 0)]).validate_on(g)
    with pytest.raises(ValueError, match="out of bounds"):
        GoalRegion([(2, 0)]).validate_on(g)


def test_require_free():
    g = parse_map("2 2\n0 1\n# 0\n")
    require_free(g, (0, 0))
    with pytest.raises(ValueError):
        require_free(g, (1, 0))
    with pytest.raises(ValueError):
        require_free(g, (-1, 0))


def test_map_digest_covers_corner_cut_flag():
    text = "2 2\n0 #\n# 0\n"
    assert map_digest(parse_map(text)) != map_digest(parse_map(text, allow_corner_cut=False))
    assert map_digest(parse_map(text)) == map_digest(parse_map(text))
