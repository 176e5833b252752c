"""Pointer input abstraction and the three-corner calibration transform.

A tracked fingertip arrives as raw sensor coordinates ``(x, y, z)``. Pointing
at three corner panels once per setup determines the unique affine map from
sensor (x, y) to continuous grid coordinates; depth (z) never enters that
map — it is quantized separately into the four opacity levels.

Continuous grid coordinates put cell ``(c, r)`` over the half-open square
``[c, c+1) x [r, r+1)``, so its center sits at ``(c + 0.5, r + 0.5)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grid import Cell, GridDims

DEFAULT_Z_SPAN = 200.0  # sensor depth units covered by the four opacity bands
COLLINEAR_AREA_TOL = 1e-6


class CalibrationError(ValueError):
    """Degenerate corner points; the calibration must be redone."""


@dataclass(frozen=True)
class PointerSample:
    """One raw pointer reading in sensor space, timestamped in milliseconds."""

    x: float
    y: float
    z: float = 0.0
    t: float = 0.0

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z, "t": self.t}

    @classmethod
    def from_json(cls, data: dict) -> "PointerSample":
        return cls(data["x"], data["y"], data.get("z", 0.0), data.get("t", 0.0))


@dataclass(frozen=True)
class Calibration:
    """Affine sensor-to-grid map plus the depth band for opacity.

    ``matrix`` is 2x3: (u, v) = matrix @ (x, y, 1). ``z_sign`` flips which
    side of the sensor counts as "behind" (toward the user, higher opacity),
    since sensor axis conventions vary.
    """

    matrix: tuple[tuple[float, float, float], tuple[float, float, float]]
    z_ref: float
    z_span: float = DEFAULT_Z_SPAN
    z_sign: int = 1

    def to_grid(self, x: float, y: float) -> tuple[float, float]:
        (a, b, c), (d, e, f) = self.matrix
        return a * x + b * y + c, d * x + e * y + f


def calibrate(
    pairs: list[tuple[PointerSample, Cell]],
    z_span: float = DEFAULT_Z_SPAN,
    z_sign: int = 1,
) -> Calibration:
    """Solve the affine map sending three sensor points to their cell centers.

    Three correspondences give six equations for the six affine
    coefficients — an exact solve. The sensor points must span a triangle
    (area > 1e-6); collinear or duplicate points raise CalibrationError.
    ``z_ref`` becomes the mean depth of the three samples.
    """
    if len(pairs) != 3:
        raise CalibrationError(f"exactly 3 correspondences required, got {len(pairs)}")
    samples = [s for s, _ in pairs]
    (x1, y1), (x2, y2), (x3, y3) = [(s.x, s.y) for s in samples]
    area = 0.5 * abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))
    if area <= COLLINEAR_AREA_TOL:
        raise CalibrationError(
            f"calibration points are collinear or too close (triangle area {area:.3g})"
        )

    # Columns are the homogeneous sensor points; rows of the unknown 2x3
    # matrix act on them, so solve S^T @ M^T = T^T.
    sensor = np.array([[x1, x2, x3], [y1, y2, y3], [1.0, 1.0, 1.0]])
    targets = np.array(
        [[col + 0.5 for _, (col, _row) in pairs],
         [row + 0.5 for _, (_col, row) in pairs]]
    )
    matrix = np.linalg.solve(sensor.T, targets.T).T
    z_ref = sum(s.z for s in samples) / 3.0
    return Calibration(
        matrix=tuple(tuple(float(v) for v in row) for row in matrix),
        z_ref=z_ref,
        z_span=z_span,
        z_sign=z_sign,
    )


def to_cell(cal: Calibration, sample: PointerSample, dims: GridDims) -> Cell:
    """Map a sensor sample to the nearest grid cell, clamped to the bounds."""
    u, v = cal.to_grid(sample.x, sample.y)
    return dims.clamp(math.floor(u), math.floor(v))


def z_to_opacity(cal: Calibration, z: float) -> int:
    """Quantize depth into opacity level 1..4.

    The span ``[z_ref - z_span/2, z_ref + z_span/2]`` splits into four equal
    bands; depth beyond either end clamps to the extreme level. With
    ``z_sign = 1``, larger z (behind the sensor, toward the user) means
    higher opacity.
    """
    depth = cal.z_sign * (z - cal.z_ref)
    band = math.floor((depth + cal.z_span / 2.0) / (cal.z_span / 4.0)) + 1
    return min(max(band, 1), 4)


def save_calibration(path: str | Path, cal: Calibration) -> Path:
    """Persist as plain text: six affine coefficients, depth band, sign flag."""
    (a, b, c), (d, e, f) = cal.matrix
    lines = [
        f"a={a!r}", f"b={b!r}", f"c={c!r}",
        f"d={d!r}", f"e={e!r}", f"f={f!r}",
        f"z_ref={cal.z_ref!r}",
        f"z_span={cal.z_span!r}",
        f"z_sign={cal.z_sign}",
    ]
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_calibration(path: str | Path) -> Calibration:
    fields: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").strip().splitlines():
        key, _, value = line.partition("=")
        fields[key] = value
    return calibration_from_fields(fields)


def calibration_from_fields(fields: dict) -> Calibration:
    """Build a Calibration from a flat key/value mapping (file or wire form)."""
    return Calibration(
        matrix=(
            (float(fields["a"]), float(fields["b"]), float(fields["c"])),
            (float(fields["d"]), float(fields["e"]), float(fields["f"])),
        ),
        z_ref=float(fields["z_ref"]),
        z_span=float(fields["z_span"]),
        z_sign=int(fields["z_sign"]),
    )


def calibration_to_fields(cal: Calibration) -> dict:
    (a, b, c), (d, e, f) = cal.matrix
    return {
        "a": a, "b": b, "c": c, "d": d, "e": e, "f": f,
        "z_ref": cal.z_ref, "z_span": cal.z_span, "z_sign": cal.z_sign,
    }
