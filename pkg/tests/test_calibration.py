"""Calibration tests: affine solve vs an independent Cramer's-rule oracle,
cell mapping, and depth-to-opacity banding."""

import math
import random

import pytest

from banditcanvas.calibration import (
    Calibration,
    CalibrationError,
    PointerSample,
    calibrate,
    calibration_from_fields,
    calibration_to_fields,
    load_calibration,
    save_calibration,
    to_cell,
    z_to_opacity,
)
from banditcanvas.grid import GridDims


def oracle_affine(points, targets):
    """Solve for the 2x3 affine map by Cramer's rule, no numpy.

    points/targets are three (x, y) pairs; returns ((a,b,c),(d,e,f)) with
    u = a x + b y + c, v = d x + e y + f.
    """
    (x1, y1), (x2, y2), (x3, y3) = points
    det = (
        x1 * (y2 - y3) - y1 * (x2 - x3) + (x2 * y3 - x3 * y2)
    )

    def solve_row(values):
        t1, t2, t3 = values
        da = t1 * (y2 - y3) - y1 * (t2 - t3) + (t2 * y3 - t3 * y2)
        db = x1 * (t2 - t3) - t1 * (x2 - x3) + (x2 * t3 - x3 * t2)
        dc = x1 * (y2 * t3 - y3 * t2) - y1 * (x2 * t3 - x3 * t2) + t1 * (x2 * y3 - x3 * y2)
        return da / det, db / det, dc / det

    us = [t[0] for t in targets]
    vs = [t[1] for t in targets]
    return solve_row(us), solve_row(vs)


def random_triangle(rng, scale=200.0, min_area=1.0):
    while True:
        pts = [(rng.uniform(-scale, scale), rng.uniform(-scale, scale)) for _ in range(3)]
        (x1, y1), (x2, y2), (x3, y3) = pts
        area = 0.5 * abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))
        if area > min_area:
            return pts


def corner_cells(dims):
    return [(0, 0), (dims.width - 1, 0), (0, dims.height - 1)]


def make_pairs(points, cells, z=0.0):
    return [
        (PointerSample(x, y, z=z, t=i * 10.0), cell)
        for i, ((x, y), cell) in enumerate(zip(points, cells))
    ]


def test_identity_scale_calibration():
    # Sensor coordinates already equal to cell indices: the map is identity
    # plus the half-cell center offset.
    pairs = make_pairs([(0, 0), (23, 0), (0, 13)], corner_cells(GridDims()))
    cal = calibrate(pairs)
    (a, b, c), (d, e, f) = cal.matrix
    assert (a, b, c) == pytest.approx((1.0, 0.0, 0.5), abs=1e-12)
    assert (d, e, f) == pytest.approx((0.0, 1.0, 0.5), abs=1e-12)


def test_collinear_points_rejected():
    pairs = make_pairs([(0, 0), (10, 10), (20, 20)], corner_cells(GridDims()))
    with pytest.raises(CalibrationError):
        calibrate(pairs)


def test_duplicate_points_rejected():
    pairs = make_pairs([(5, 5), (5, 5), (20, 0)], corner_cells(GridDims()))
    with pytest.raises(CalibrationError):
        calibrate(pairs)


def test_wrong_pair_count_rejected():
    pairs = make_pairs([(0, 0), (10, 0)], [(0, 0), (23, 0)])
    with pytest.raises(CalibrationError):
        calibrate(pairs)


def test_solution_matches_cramer_oracle():
    rng = random.Random(17)
    dims = GridDims()
    cells = corner_cells(dims)
    centers = [(c + 0.5, r + 0.5) for c, r in cells]
    for _ in range(300):
        points = random_triangle(rng)
        cal = calibrate(make_pairs(points, cells))
        expected = oracle_affine(points, centers)
        for got_row, want_row in zip(cal.matrix, expected):
            assert got_row == pytest.approx(want_row, rel=1e-9, abs=1e-9)


def test_correspondences_reproduced_within_tolerance():
    rng = random.Random(23)
    dims = GridDims()
    cells = corner_cells(dims)
    for _ in range(1000):
        points = random_triangle(rng)
        cal = calibrate(make_pairs(points, cells))
        for (x, y), (col, row) in zip(points, cells):
            u, v = cal.to_grid(x, y)
            assert math.isclose(u, col + 0.5, abs_tol=1e-9)
            assert math.isclose(v, row + 0.5, abs_tol=1e-9)


def test_calibration_points_map_to_their_cells():
    rng = random.Random(29)
    dims = GridDims()
    cells = corner_cells(dims)
    for _ in range(200):
        points = random_triangle(rng)
        pairs = make_pairs(points, cells)
        cal = calibrate(pairs)
        for sample, cell in pairs:
            assert to_cell(cal, sample, dims) == cell


def test_barycentric_midpoint_maps_affinely():
    rng = random.Random(31)
    dims = GridDims()
    cells = corner_cells(dims)
    for _ in range(100):
        points = random_triangle(rng)
        cal = calibrate(make_pairs(points, cells))
        mid_x = sum(x for x, _ in points) / 3.0
        mid_y = sum(y for _, y in points) / 3.0
        u, v = cal.to_grid(mid_x, mid_y)
        # Independent side: average the three target centers directly.
        want_u = sum(c + 0.5 for c, _ in cells) / 3.0
        want_v = sum(r + 0.5 for _, r in cells) / 3.0
        assert math.isclose(u, want_u, abs_tol=1e-9)
        assert math.isclose(v, want_v, abs_tol=1e-9)


def test_far_samples_clamp_to_boundary():
    dims = GridDims()
    pairs = make_pairs([(0, 0), (23, 0), (0, 13)], corner_cells(dims))
    cal = calibrate(pairs)
    assert to_cell(cal, PointerSample(-1000, -1000), dims) == (0, 0)
    assert to_cell(cal, PointerSample(1000, 1000), dims) == (23, 13)
    assert to_cell(cal, PointerSample(1000, -1000), dims) == (23, 0)


def test_to_cell_always_in_bounds():
    rng = random.Random(37)
    dims = GridDims()
    cal = calibrate(make_pairs(random_triangle(rng), corner_cells(dims)))
    for _ in range(500):
        sample = PointerSample(rng.uniform(-5000, 5000), rng.uniform(-5000, 5000))
        assert dims.contains(to_cell(cal, sample, dims))


class TestOpacity:
    def cal(self, z_ref=100.0, z_span=200.0, z_sign=1):
        return Calibration(((1, 0, 0), (0, 1, 0)), z_ref=z_ref, z_span=z_span, z_sign=z_sign)

    def test_extremes_clamp(self):
        cal = self.cal()
        assert z_to_opacity(cal, cal.z_ref + cal.z_span / 2) == 4
        assert z_to_opacity(cal, cal.z_ref - cal.z_span / 2) == 1
        assert z_to_opacity(cal, cal.z_ref + 10 * cal.z_span) == 4
        assert z_to_opacity(cal, cal.z_ref - 10 * cal.z_span) == 1

    def test_monotone_and_surjective_over_span(self):
        cal = self.cal()
        levels = []
        z = cal.z_ref - cal.z_span / 2
        while z <= cal.z_ref + cal.z_span / 2:
            levels.append(z_to_opacity(cal, z))
            z += cal.z_span / 400
        assert levels == sorted(levels)
        assert set(levels) == {1, 2, 3, 4}

    def test_sign_flip_reverses_bands(self):
        plus = self.cal(z_sign=1)
        minus = self.cal(z_sign=-1)
        z_high = plus.z_ref + plus.z_span / 2
        assert z_to_opacity(plus, z_high) == 4
        assert z_to_opacity(minus, z_high) == 1

    def test_z_ref_is_mean_sample_depth(self):
        pairs = [
            (PointerSample(0, 0, z=90.0), (0, 0)),
            (PointerSample(23, 0, z=100.0), (23, 0)),
            (PointerSample(0, 13, z=110.0), (0, 13)),
        ]
        assert calibrate(pairs).z_ref == pytest.approx(100.0)


def test_calibration_file_round_trip(tmp_path):
    rng = random.Random(41)
    dims = GridDims()
    cal = calibrate(
        make_pairs(random_triangle(rng), corner_cells(dims), z=55.0),
        z_span=140.0,
        z_sign=-1,
    )
    path = save_calibration(tmp_path / "cal.txt", cal)
    assert load_calibration(path) == cal


def test_calibration_wire_fields_round_trip():
    rng = random.Random(43)
    cal = calibrate(make_pairs(random_triangle(rng), corner_cells(GridDims())))
    assert calibration_from_fields(
        {k: str(v) for k, v in calibration_to_fields(cal).items()}
    ) == cal
