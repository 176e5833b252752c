"""Drawing sessions: the step loop, the event log, and exact replay.

One session is one drawing run — a fresh canvas and fresh learners, a fixed
number of proposal/movement iterations, and an append-only event log. The
log (JSON lines with a config header and a final state trailer) is the unit
of replay: feeding the recorded pointer inputs back through a fresh session
reproduces the final canvas and bandit state byte for byte.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

from .agent import AgentMode, ColoristAgent, Movement, Direction, classify_movement
from .grid import Cell, GridCanvas, GridDims, Offset, PanelPaint


class SessionComplete(Exception):
    """Raised when stepping a session that has used up all its iterations."""


class ReplayError(Exception):
    """Raised when an event log does not match the session it claims to record."""


@dataclass(frozen=True)
class SessionConfig:
    mode: AgentMode = AgentMode.ADAPTIVE
    seed: int = 0
    iterations: int = 500
    width: int = 24
    height: int = 14
    dwell_ms: int = 2000
    epsilon: float = 0.2
    palette_size: int = 10
    reward_scheme: str = "cone"

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        object.__setattr__(self, "mode", AgentMode(self.mode))

    @property
    def dims(self) -> GridDims:
        return GridDims(self.width, self.height)

    def to_json(self) -> dict:
        data = asdict(self)
        data["mode"] = self.mode.value
        return data

    @classmethod
    def from_json(cls, data: dict) -> "SessionConfig":
        return cls(**data)


@dataclass(frozen=True)
class SessionEvent:
    """One step of a session, sufficient to replay and audit it.

    ``proposals`` maps in-bounds Moore offsets to the proposed arm;
    ``rewards`` records what each bandit was actually paid this step.
    ``timestamp`` is wall-clock and excluded from replay comparison.
    """

    step: int
    center: Cell
    opacity: int
    movement: Movement | None
    proposals: dict[Offset, int]
    rewards: dict[Offset, float]
    inked: Cell | None
    inked_paint: PanelPaint | None
    timestamp: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "center": list(self.center),
            "opacity": self.opacity,
            "movement": None
            if self.movement is None
            else {
                "direction": self.movement.direction.value,
                "dc": self.movement.dc,
                "dr": self.movement.dr,
            },
            "proposals": {o.key(): arm for o, arm in self.proposals.items()},
            "rewards": {o.key(): r for o, r in self.rewards.items()},
            "inked": None if self.inked is None else list(self.inked),
            "inked_paint": None
            if self.inked_paint is None
            else {"arm": self.inked_paint.arm, "opacity": self.inked_paint.opacity},
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SessionEvent":
        movement = data["movement"]
        inked_paint = data["inked_paint"]
        return cls(
            step=data["step"],
            center=tuple(data["center"]),
            opacity=data["opacity"],
            movement=None
            if movement is None
            else Movement(Direction(movement["direction"]), movement["dc"], movement["dr"]),
            proposals={Offset.from_key(k): v for k, v in data["proposals"].items()},
            rewards={Offset.from_key(k): v for k, v in data["rewards"].items()},
            inked=None if data["inked"] is None else tuple(data["inked"]),
            inked_paint=None
            if inked_paint is None
            else PanelPaint(inked_paint["arm"], inked_paint["opacity"]),
            timestamp=data.get("timestamp", 0.0),
        )


class DrawingSession:
    """Serializes all mutation of one canvas/agent pair through :meth:`step`."""

    def __init__(self, config: SessionConfig):
        self.config = config
        self.agent = ColoristAgent(
            mode=config.mode,
            k=config.palette_size,
            epsilon=config.epsilon,
            seed=config.seed,
            reward_scheme=config.reward_scheme,
        )
        self.canvas = GridCanvas(config.dims)
        self.events: list[SessionEvent] = []
        self.center: Cell | None = None

    @property
    def done(self) -> bool:
        return len(self.events) >= self.config.iterations

    def step(self, cell: Cell, opacity: int, timestamp: float | None = None) -> SessionEvent:
        """Advance the session by one pointer observation.

        In order: classify the movement from the previous center, pay
        rewards, ink the moved-onto cell if it carried a proposal, then
        re-center and roll a fresh proposal ring at the given opacity.
        The first step only proposes (there is no previous center yet).

        ``timestamp`` defaults to wall clock; deterministic callers (the
        simulation harness, replay, the live service with its sample
        clocks) pass their own so logs replay bit for bit.
        """
        if self.done:
            raise SessionComplete(
                f"session finished after {self.config.iterations} iterations"
            )
        if not self.config.dims.contains(cell):
            raise ValueError(f"cell {cell} outside grid")

        movement = None
        rewards: dict[Offset, float] = {}
        inked = None
        inked_paint = None
        if self.center is not None:
            movement = classify_movement(self.center, cell)
            rewards = self.agent.assign_rewards(movement)
            if movement.direction is not Direction.STAY:
                inked_paint = self.canvas.ink_panel(cell)
                if inked_paint is not None:
                    inked = cell

        arms = self.agent.propose(cell, self.config.dims)
        paints = {offset: PanelPaint(arm, opacity) for offset, arm in arms.items()}
        self.canvas.set_proposals(cell, paints)

        event = SessionEvent(
            step=len(self.events),
            center=cell,
            opacity=opacity,
            movement=movement,
            proposals=arms,
            rewards=rewards,
            inked=inked,
            inked_paint=inked_paint,
            timestamp=time.time() if timestamp is None else timestamp,
        )
        self.events.append(event)
        self.center = cell
        self.agent.step = len(self.events)
        return event


def session_log_lines(session: DrawingSession) -> list[str]:
    """Serialize a session as JSON lines: config header, events, state trailer."""
    lines = [json.dumps({"config": session.config.to_json()}, sort_keys=True)]
    lines.extend(json.dumps(e.to_json(), sort_keys=True) for e in session.events)
    lines.append(
        json.dumps(
            {"final": {"agent_snapshot": session.agent.snapshot(),
                       "grid_csv": session.canvas.export_csv()}},
            sort_keys=True,
        )
    )
    return lines


def write_session_log(path: str | Path, session: DrawingSession) -> Path:
    path = Path(path)
    path.write_text("\n".join(session_log_lines(session)) + "\n", encoding="utf-8")
    return path


@dataclass
class SessionLog:
    config: SessionConfig
    events: list[SessionEvent]
    agent_snapshot: str | None = None
    grid_csv: str | None = None


def read_session_log(path: str | Path) -> SessionLog:
    lines = Path(path).read_text(encoding="utf-8").strip().splitlines()
    return parse_session_log(lines)


def parse_session_log(lines: list[str]) -> SessionLog:
    if not lines:
        raise ReplayError("empty session log")
    header = json.loads(lines[0])
    if "config" not in header:
        raise ReplayError("session log missing config header")
    log = SessionLog(config=SessionConfig.from_json(header["config"]), events=[])
    for line in lines[1:]:
        record = json.loads(line)
        if "final" in record:
            log.agent_snapshot = record["final"]["agent_snapshot"]
            log.grid_csv = record["final"]["grid_csv"]
        else:
            log.events.append(SessionEvent.from_json(record))
    return log


def replay(config: SessionConfig, events: list[SessionEvent]) -> DrawingSession:
    """Re-run the recorded pointer inputs and verify every step matches.

    Only the recorded (cell, opacity) inputs drive the replay; everything
    else — proposals, rewards, inkings — is recomputed and compared against
    the log. Any mismatch (tampered step index, different proposals, wrong
    reward) raises :class:`ReplayError`.
    """
    if len(events) > config.iterations:
        raise ReplayError(
            f"log has {len(events)} events but config allows {config.iterations}"
        )
    session = DrawingSession(config)
    for logged in events:
        if logged.step != len(session.events):
            raise ReplayError(
                f"step index mismatch: log says {logged.step}, "
                f"session is at {len(session.events)}"
            )
        produced = session.step(logged.center, logged.opacity, timestamp=logged.timestamp)
        if produced != logged:  # timestamp excluded via compare=False
            raise ReplayError(f"replay diverged at step {logged.step}")
    return session
