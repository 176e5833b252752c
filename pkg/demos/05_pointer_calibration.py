"""Pointer calibration: three corner points fix the sensor-to-grid map.

The tracked fingertip reports raw millimeter coordinates. Pointing at
three corner panels once per setup determines the affine transform into
grid space; depth stays out of the transform and drives opacity instead.
"""

from banditcanvas import (
    GridDims,
    PointerSample,
    calibrate,
    load_calibration,
    save_calibration,
    to_cell,
    z_to_opacity,
)

dims = GridDims()

# Simulate a sensor whose view of the wall is shifted, scaled and slightly
# rotated. The user points at the three corner panels.
pairs = [
    (PointerSample(x=-118.0, y=52.0, z=140.0, t=0.0), (0, 0)),
    (PointerSample(x=121.0, y=61.0, z=160.0, t=1200.0), (dims.width - 1, 0)),
    (PointerSample(x=-112.0, y=-73.0, z=150.0, t=2400.0), (0, dims.height - 1)),
]
cal = calibrate(pairs)
print("affine matrix rows:", cal.matrix)
print("z reference:", cal.z_ref)

# Every calibration point maps back onto its own panel.
for sample, cell in pairs:
    print(f"sensor ({sample.x:7.1f},{sample.y:6.1f}) -> cell {to_cell(cal, sample, dims)}"
          f"  (expected {cell})")

# A pointer sweep across the sensor crosses the grid cell by cell; samples
# beyond the edges clamp to the border panels.
print("\nsweep along the top edge:")
for x in range(-150, 151, 30):
    print(f"  x={x:5d} -> {to_cell(cal, PointerSample(x, 55.0), dims)}")

# Depth quantizes into the four opacity bands around z_ref.
print("\ndepth to opacity:")
for z in range(40, 261, 20):
    level = z_to_opacity(cal, float(z))
    print(f"  z={z:3d}mm -> opacity {level} {'#' * level}")

# One calibration per setup: persist and reload.
path = save_calibration("/tmp/banditcanvas_cal.txt", cal)
print("\nreloaded equals original:", load_calibration(path) == cal)
