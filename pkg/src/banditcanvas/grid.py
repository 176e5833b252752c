"""Canvas state: panel paints, Moore-neighborhood geometry, proposals and inking.

Coordinates are ``(col, row)`` with col growing rightward and row growing
downward, so "up" is ``dr = -1``. The grid is finite and non-toroidal:
neighborhood cells falling outside the bounds are simply dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

Cell = tuple[int, int]  # (col, row)

OPACITY_LEVELS = (1, 2, 3, 4)
UNPAINTED = "-1"  # CSV marker for a white panel


@dataclass(frozen=True)
class Offset:
    """A single-cell displacement; the 8 Moore offsets exclude (0, 0)."""

    dc: int
    dr: int

    def key(self) -> str:
        return f"{self.dc},{self.dr}"

    @classmethod
    def from_key(cls, key: str) -> "Offset":
        dc, dr = key.split(",")
        return cls(int(dc), int(dr))


# Row-major by offset: dr from -1 to 1, dc from -1 to 1, center excluded.
MOORE_OFFSETS: tuple[Offset, ...] = tuple(
    Offset(dc, dr)
    for dr in (-1, 0, 1)
    for dc in (-1, 0, 1)
    if (dc, dr) != (0, 0)
)
VON_NEUMANN_OFFSETS: tuple[Offset, ...] = tuple(
    o for o in MOORE_OFFSETS if abs(o.dc) + abs(o.dr) == 1
)
DIAGONAL_OFFSETS: tuple[Offset, ...] = tuple(
    o for o in MOORE_OFFSETS if abs(o.dc) * abs(o.dr) == 1
)
CENTER_OFFSET = Offset(0, 0)


@dataclass(frozen=True)
class GridDims:
    """Panel counts of the canvas; defaults to the 24x14 drawing surface."""

    width: int = 24
    height: int = 14

    def __post_init__(self):
        if self.width < 3 or self.height < 3:
            raise ValueError(
                f"grid must be at least 3x3 to fit a Moore neighborhood, "
                f"got {self.width}x{self.height}"
            )

    def contains(self, cell: Cell) -> bool:
        col, row = cell
        return 0 <= col < self.width and 0 <= row < self.height

    def clamp(self, col: int, row: int) -> Cell:
        return (
            min(max(col, 0), self.width - 1),
            min(max(row, 0), self.height - 1),
        )


@dataclass(frozen=True)
class PanelPaint:
    """Committed or proposed color of one panel: palette arm + opacity level."""

    arm: int
    opacity: int

    def __post_init__(self):
        if self.arm < 0:
            raise ValueError(f"arm must be nonnegative, got {self.arm}")
        if self.opacity not in OPACITY_LEVELS:
            raise ValueError(f"opacity must be one of {OPACITY_LEVELS}, got {self.opacity}")


def moore_neighborhood(center: Cell, dims: GridDims) -> list[Cell]:
    """In-bounds Moore cells around ``center``, row-major by offset.

    Raises ValueError when the center itself is out of bounds.
    """
    if not dims.contains(center):
        raise ValueError(f"center {center} outside {dims.width}x{dims.height} grid")
    col, row = center
    cells = []
    for off in MOORE_OFFSETS:
        cell = (col + off.dc, row + off.dr)
        if dims.contains(cell):
            cells.append(cell)
    return cells


class GridCanvas:
    """The drawing surface: permanent paints plus the transient proposal ring.

    A proposal may cover an already-painted panel; it shadows the paint for
    rendering and replaces it only if the panel is inked again. Painted
    entries are never deleted within a session.
    """

    def __init__(self, dims: GridDims | None = None):
        self.dims = dims or GridDims()
        self.painted: dict[Cell, PanelPaint] = {}
        self.proposals: dict[Cell, PanelPaint] = {}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridCanvas):
            return NotImplemented
        return (
            self.dims == other.dims
            and self.painted == other.painted
            and self.proposals == other.proposals
        )

    def visible_paint(self, cell: Cell) -> PanelPaint | None:
        """What the panel shows right now; proposals take precedence, None is white."""
        return self.proposals.get(cell) or self.painted.get(cell)

    def set_proposals(self, center: Cell, paints: dict[Offset, PanelPaint]) -> list[Cell]:
        """Replace the proposal ring around ``center``.

        Prior proposals are cleared. One proposal is written per in-bounds
        Moore offset present in ``paints``; out-of-bounds offsets and the
        center offset are dropped. Returns the cells that received proposals.
        """
        if not self.dims.contains(center):
            raise ValueError(f"center {center} outside grid")
        self.proposals.clear()
        col, row = center
        placed = []
        for off in MOORE_OFFSETS:
            if off not in paints:
                continue
            cell = (col + off.dc, row + off.dr)
            if not self.dims.contains(cell):
                continue
            self.proposals[cell] = paints[off]
            placed.append(cell)
        return placed

    def ink_panel(self, cell: Cell) -> PanelPaint | None:
        """Commit the proposal at ``cell`` permanently.

        Returns the committed paint, or None (flagged no-op) when the cell
        carries no proposal — e.g. the pointer left the proposal ring.
        """
        paint = self.proposals.pop(cell, None)
        if paint is None:
            return None
        self.painted[cell] = paint
        return paint

    def export_csv(self) -> str:
        """Row-major CSV dump of committed paints: ``arm:opacity`` or ``-1``.

        Proposals are transient and excluded. Deterministic for a given
        painted state.
        """
        lines = []
        for row in range(self.dims.height):
            entries = []
            for col in range(self.dims.width):
                paint = self.painted.get((col, row))
                if paint is None:
                    entries.append(UNPAINTED)
                else:
                    entries.append(f"{paint.arm}:{paint.opacity}")
            lines.append(",".join(entries))
        return "\n".join(lines) + "\n"

    @classmethod
    def import_csv(cls, text: str) -> "GridCanvas":
        """Rebuild a canvas from :meth:`export_csv` output."""
        rows = [line.split(",") for line in text.strip().splitlines()]
        if not rows:
            raise ValueError("empty grid dump")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValueError(f"ragged grid dump, row widths {sorted(widths)}")
        canvas = cls(GridDims(width=widths.pop(), height=len(rows)))
        for row, entries in enumerate(rows):
            for col, entry in enumerate(entries):
                if entry == UNPAINTED:
                    continue
                arm, _, opacity = entry.partition(":")
                canvas.painted[(col, row)] = PanelPaint(int(arm), int(opacity))
        return canvas
