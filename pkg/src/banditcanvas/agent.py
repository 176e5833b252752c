"""The color-proposing agent: one bandit per neighborhood direction.

Nine 10-armed bandits live behind the proposal ring — one per Moore offset
plus an inert center bandit. Arms map onto a fixed blue-to-red palette.
After every pointer movement the agent rewards the bandits whose panels lay
in the movement direction: the matching von Neumann bandit earns 1.0 and
the two diagonal bandits flanking that direction earn 0.5 each ("cone"
scheme). A control mode proposes uniformly random colors and never learns.
"""

from __future__ import annotations

import colorsys
import random
from dataclasses import dataclass
from enum import Enum

from .grid import (
    CENTER_OFFSET,
    Cell,
    GridDims,
    MOORE_OFFSETS,
    Offset,
    VON_NEUMANN_OFFSETS,
)
from .learners import Bandit, derive_seed

PALETTE_SIZE = 10

REWARD_CARDINAL = 1.0
REWARD_DIAGONAL = 0.5


class Palette:
    """Fixed drawing palette: ``k`` hues stepping from blue (240deg) to red (0deg).

    Hue is strictly monotone in the arm index; saturation and value are full.
    """

    def __init__(self, k: int = PALETTE_SIZE):
        if k < 2:
            raise ValueError(f"palette needs at least 2 hues, got {k}")
        self.k = k

    def hue(self, arm: int) -> float:
        """Hue in degrees; arm 0 -> 240.0 (blue), arm k-1 -> 0.0 (red)."""
        self._check(arm)
        return 240.0 * (1.0 - arm / (self.k - 1))

    def rgb(self, arm: int) -> tuple[float, float, float]:
        return colorsys.hsv_to_rgb(self.hue(arm) / 360.0, 1.0, 1.0)

    def hex(self, arm: int) -> str:
        r, g, b = self.rgb(arm)
        return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))

    def luminance(self, arm: int) -> float:
        """Relative luminance of the hue at full opacity (Rec. 709 weights)."""
        r, g, b = self.rgb(arm)
        return 0.2126 * r + 0.7152 * g + 0.0722 * b

    def _check(self, arm: int) -> None:
        if not 0 <= arm < self.k:
            raise ValueError(f"arm {arm} out of range for palette of {self.k}")


class Direction(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    UP = "up"
    DOWN = "down"
    STAY = "stay"


@dataclass(frozen=True)
class Movement:
    """One pointer move between grid cells: quantized direction + raw delta."""

    direction: Direction
    dc: int
    dr: int


def classify_movement(old_center: Cell, new_center: Cell) -> Movement:
    """Quantize a cell-to-cell move into left/right/up/down/stay.

    The dominant axis wins; on an exact diagonal the horizontal component
    takes precedence (deterministic tie-break). "Up" means row decreasing.
    """
    dc = new_center[0] - old_center[0]
    dr = new_center[1] - old_center[1]
    if dc == 0 and dr == 0:
        direction = Direction.STAY
    elif abs(dc) >= abs(dr):
        direction = Direction.RIGHT if dc > 0 else Direction.LEFT
    else:
        direction = Direction.DOWN if dr > 0 else Direction.UP
    return Movement(direction, dc, dr)


def _cone(cardinal: Offset) -> tuple[tuple[Offset, float], ...]:
    """Reward cone of a cardinal offset: itself at 1.0, flanking diagonals at 0.5."""
    if cardinal.dc == 0:  # vertical move: diagonals share the row component
        flanks = (Offset(-1, cardinal.dr), Offset(1, cardinal.dr))
    else:  # horizontal move: diagonals share the column component
        flanks = (Offset(cardinal.dc, -1), Offset(cardinal.dc, 1))
    return (
        (cardinal, REWARD_CARDINAL),
        (flanks[0], REWARD_DIAGONAL),
        (flanks[1], REWARD_DIAGONAL),
    )


REWARD_CONES: dict[Direction, tuple[tuple[Offset, float], ...]] = {
    Direction.UP: _cone(Offset(0, -1)),
    Direction.DOWN: _cone(Offset(0, 1)),
    Direction.LEFT: _cone(Offset(-1, 0)),
    Direction.RIGHT: _cone(Offset(1, 0)),
}

REWARD_SCHEMES = ("cone", "moved-onto")


class AgentMode(str, Enum):
    ADAPTIVE = "adaptive"
    RANDOM = "random"


class ColoristAgent:
    """Nine per-offset bandits proposing neighborhood colors.

    In adaptive mode every Moore-offset bandit selects an arm each round,
    even when its panel falls outside the grid (the selection is simply not
    displayed); this keeps the reward bookkeeping uniform at the edges. The
    center bandit is instantiated for completeness but never queried or
    updated. In random mode arms come from a separate session stream and no
    bandit state — value estimates, counts or RNG position — ever changes.
    """

    def __init__(
        self,
        mode: AgentMode = AgentMode.ADAPTIVE,
        k: int = PALETTE_SIZE,
        epsilon: float = 0.2,
        seed: int = 0,
        reward_scheme: str = "cone",
    ):
        if reward_scheme not in REWARD_SCHEMES:
            raise ValueError(f"unknown reward scheme {reward_scheme!r}")
        self.mode = AgentMode(mode)
        self.k = k
        self.reward_scheme = reward_scheme
        self.bandits: dict[Offset, Bandit] = {}
        for index, offset in enumerate((*MOORE_OFFSETS, CENTER_OFFSET)):
            self.bandits[offset] = Bandit(
                k=k,
                epsilon=epsilon,
                seed=derive_seed(seed, f"bandit:{index}"),
            )
        self._random_rng = random.Random(derive_seed(seed, "random-proposals"))
        self._last_selection: dict[Offset, int] | None = None
        self._reward_pending = False
        self.step = 0

    def propose(self, center: Cell, dims: GridDims) -> dict[Offset, int]:
        """Select one arm per Moore offset; returns the in-bounds subset.

        All eight offsets select internally (for edge-uniform rewards); the
        returned map only contains offsets whose panel lies on the grid.
        """
        if not dims.contains(center):
            raise ValueError(f"center {center} outside grid")
        selection: dict[Offset, int] = {}
        for offset in MOORE_OFFSETS:
            if self.mode is AgentMode.ADAPTIVE:
                selection[offset] = self.bandits[offset].select()
            else:
                selection[offset] = self._random_rng.randrange(self.k)
        self._last_selection = selection
        self._reward_pending = True
        col, row = center
        return {
            offset: arm
            for offset, arm in selection.items()
            if dims.contains((col + offset.dc, row + offset.dr))
        }

    def assign_rewards(self, movement: Movement) -> dict[Offset, float]:
        """Reward the bandits matching the user's movement direction.

        Cone scheme: the von Neumann bandit in the movement direction gets
        1.0 and the two diagonals sharing its axis component get 0.5 each.
        Moved-onto scheme: only the bandit of the exact moved-onto offset is
        rewarded (1.0 von Neumann, 0.5 diagonal); multi-cell jumps reward
        nothing. Stay movements and random mode never update anything.
        Returns the rewards actually applied, keyed by offset.
        """
        if not self._reward_pending:
            raise RuntimeError("assign_rewards called twice without an intervening propose")
        self._reward_pending = False
        if self.mode is AgentMode.RANDOM or movement.direction is Direction.STAY:
            return {}
        assert self._last_selection is not None
        applied: dict[Offset, float] = {}
        if self.reward_scheme == "cone":
            for offset, reward in REWARD_CONES[movement.direction]:
                self.bandits[offset].update(self._last_selection[offset], reward)
                applied[offset] = reward
        else:
            moved_onto = Offset(movement.dc, movement.dr)
            if moved_onto in self._last_selection:
                reward = (
                    REWARD_CARDINAL
                    if moved_onto in VON_NEUMANN_OFFSETS
                    else REWARD_DIAGONAL
                )
                self.bandits[moved_onto].update(self._last_selection[moved_onto], reward)
                applied[moved_onto] = reward
        return applied

    def snapshot(self) -> str:
        """All nine bandit records concatenated, keyed by offset, in a fixed order."""
        sections = []
        for offset in (*MOORE_OFFSETS, CENTER_OFFSET):
            sections.append(f"[{offset.key()}]")
            sections.append(self.bandits[offset].snapshot())
        return "\n".join(sections) + "\n"
