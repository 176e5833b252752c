"""Headless experiment runner: simulated users and adaptation metrics.

Simulated users stand in for the study participants: each policy looks at
the current proposal ring and walks onto one of the proposed panels (or
occasionally stays put). Running the same policy and seeds in adaptive and
random mode quantifies the learning effect as the share of proposals that
fall in one color group.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from .agent import AgentMode, Palette
from .grid import Cell, GridDims, MOORE_OFFSETS, Offset, VON_NEUMANN_OFFSETS
from .learners import derive_seed
from .session import (
    DrawingSession,
    SessionConfig,
    SessionEvent,
    write_session_log,
)

DEFAULT_STAY_PROBABILITY = 0.05

# Contiguous arm groups used for the adaptation metric: blue, mid, red.
DEFAULT_COLOR_GROUPS: tuple[tuple[int, ...], ...] = (
    (0, 1, 2, 3),
    (4, 5, 6),
    (7, 8, 9),
)
DEFAULT_TRAILING_WINDOW = 100

_MOORE_INDEX = {offset: i for i, offset in enumerate(MOORE_OFFSETS)}


def _pick_preferred(proposals: dict[Offset, int], score) -> Offset:
    """Lowest-scoring offset; ties prefer cardinal cells, then Moore order."""
    return min(
        proposals,
        key=lambda o: (score(proposals[o]), o not in VON_NEUMANN_OFFSETS, _MOORE_INDEX[o]),
    )


class HuePreferrer:
    """Moves onto the proposal whose arm is nearest a target color.

    Arms within ``tolerance`` of the target count as equally good.
    """

    def __init__(self, target: int, tolerance: int = 0,
                 stay_probability: float = DEFAULT_STAY_PROBABILITY):
        self.target = target
        self.tolerance = tolerance
        self.stay_probability = stay_probability

    def choose(self, proposals: dict[Offset, int], rng: random.Random) -> Offset:
        return _pick_preferred(
            proposals, lambda arm: max(abs(arm - self.target) - self.tolerance, 0)
        )


class BrightestSeeker:
    """Moves onto the highest-luminance proposed hue."""

    def __init__(self, palette: Palette | None = None,
                 stay_probability: float = DEFAULT_STAY_PROBABILITY):
        self.palette = palette or Palette()
        self.stay_probability = stay_probability

    def choose(self, proposals: dict[Offset, int], rng: random.Random) -> Offset:
        return _pick_preferred(proposals, lambda arm: -self.palette.luminance(arm))


class ContrastSeeker:
    """Moves onto the arm farthest from the neighborhood's mean arm."""

    def __init__(self, stay_probability: float = DEFAULT_STAY_PROBABILITY):
        self.stay_probability = stay_probability

    def choose(self, proposals: dict[Offset, int], rng: random.Random) -> Offset:
        mean_arm = sum(proposals.values()) / len(proposals)
        return _pick_preferred(proposals, lambda arm: -abs(arm - mean_arm))


class RandomWalker:
    """Moves onto a uniformly random proposed panel."""

    def __init__(self, stay_probability: float = DEFAULT_STAY_PROBABILITY):
        self.stay_probability = stay_probability

    def choose(self, proposals: dict[Offset, int], rng: random.Random) -> Offset:
        offsets = sorted(proposals, key=_MOORE_INDEX.__getitem__)
        return offsets[rng.randrange(len(offsets))]


def simulate_user_step(
    policy, proposals: dict[Offset, int], current: Cell, rng: random.Random
) -> Cell:
    """Next pointer cell under ``policy``: stay with small probability,
    otherwise move onto the chosen proposal."""
    if not proposals:
        raise ValueError("no proposals to react to")
    if rng.random() < policy.stay_probability:
        return current
    offset = policy.choose(proposals, rng)
    return (current[0] + offset.dc, current[1] + offset.dr)


def parse_policy(spec: str):
    """Build a policy from a CLI-style spec: ``hue:7[:tolerance]``,
    ``brightest``, ``contrast`` or ``walker``."""
    kind, _, params = spec.partition(":")
    kind = kind.lower()
    if kind in ("hue", "huepreferrer"):
        parts = params.split(":") if params else []
        if not parts or not parts[0]:
            raise ValueError("hue policy needs a target arm, e.g. hue:7")
        target = int(parts[0])
        tolerance = int(parts[1]) if len(parts) > 1 else 0
        return HuePreferrer(target, tolerance)
    if kind in ("brightest", "brightestseeker"):
        return BrightestSeeker()
    if kind in ("contrast", "contrastseeker"):
        return ContrastSeeker()
    if kind in ("walker", "random", "randomwalker"):
        return RandomWalker()
    raise ValueError(f"unknown policy {spec!r}")


@dataclass
class SessionMetrics:
    """Adaptation measurements for one session's event log."""

    proposal_counts: list[int]
    inked_counts: list[int]
    dominant_group: int
    dominant_share: float
    window_dominant_group: int
    window_dominant_share: float
    concentration_curve: list[float]


def _group_shares(counts: list[int], groups) -> list[float]:
    total = sum(counts)
    if total == 0:
        return [0.0] * len(groups)
    return [sum(counts[a] for a in g) / total for g in groups]


def adaptation_metric(
    events: list[SessionEvent],
    groups=DEFAULT_COLOR_GROUPS,
    window: int = DEFAULT_TRAILING_WINDOW,
    palette_size: int = 10,
) -> SessionMetrics:
    """Concentration of proposals (and inked panels) in the modal color group.

    ``dominant_share`` counts every proposal in the log; ``window_dominant_share``
    only the trailing ``window`` steps, where a converged agent shows most
    clearly. The concentration curve tracks the modal group's cumulative
    share after each step.
    """
    if not events:
        raise ValueError("empty event log")
    proposal_counts = [0] * palette_size
    inked_counts = [0] * palette_size
    per_step_group_counts: list[list[int]] = []
    for event in events:
        step_counts = [0] * len(groups)
        for arm in event.proposals.values():
            proposal_counts[arm] += 1
            for gi, group in enumerate(groups):
                if arm in group:
                    step_counts[gi] += 1
        per_step_group_counts.append(step_counts)
        if event.inked_paint is not None:
            inked_counts[event.inked_paint.arm] += 1

    shares = _group_shares(proposal_counts, groups)
    dominant_group = max(range(len(groups)), key=shares.__getitem__)

    window_counts = [0] * palette_size
    for event in events[-window:]:
        for arm in event.proposals.values():
            window_counts[arm] += 1
    window_shares = _group_shares(window_counts, groups)
    window_group = max(range(len(groups)), key=window_shares.__getitem__)

    curve = []
    running = [0] * len(groups)
    running_total = 0
    for step_counts in per_step_group_counts:
        for gi, c in enumerate(step_counts):
            running[gi] += c
        running_total += sum(step_counts)
        curve.append(running[dominant_group] / running_total if running_total else 0.0)

    return SessionMetrics(
        proposal_counts=proposal_counts,
        inked_counts=inked_counts,
        dominant_group=dominant_group,
        dominant_share=shares[dominant_group],
        window_dominant_group=window_group,
        window_dominant_share=window_shares[window_group],
        concentration_curve=curve,
    )


def uniform_modal_share(groups=DEFAULT_COLOR_GROUPS, palette_size: int = 10) -> float:
    """Expected modal-group share when proposals are uniform: largest group / k."""
    return max(len(g) for g in groups) / palette_size


@dataclass
class ExperimentSpec:
    config: SessionConfig
    policy_spec: str = "hue:7"
    repetitions: int = 20
    opacity: int = 2
    groups: tuple = DEFAULT_COLOR_GROUPS
    window: int = DEFAULT_TRAILING_WINDOW

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")


@dataclass
class AdaptationReport:
    """Aggregate of per-session metrics across an experiment's repetitions."""

    mode: AgentMode
    sessions: list[SessionMetrics] = field(default_factory=list)
    baseline_delta: float | None = None

    @property
    def mean_dominant_share(self) -> float:
        return sum(s.dominant_share for s in self.sessions) / len(self.sessions)

    @property
    def mean_window_share(self) -> float:
        return sum(s.window_dominant_share for s in self.sessions) / len(self.sessions)

    def window_share_delta(self, baseline: "AdaptationReport") -> float:
        """How far this run's trailing-window concentration sits above a
        control run's, in share points."""
        return self.mean_window_share - baseline.mean_window_share


def run_session(
    config: SessionConfig, policy, user_seed: int, opacity: int = 2,
    start: Cell | None = None,
) -> DrawingSession:
    """Drive one full session with a simulated user, starting at the grid center.

    Event timestamps count simulated milliseconds (one second per step) so
    the emitted logs are bit-identical across runs.
    """
    session = DrawingSession(config)
    rng = random.Random(user_seed)
    dims = config.dims
    cell: Cell = start if start is not None else (dims.width // 2, dims.height // 2)
    event = session.step(cell, opacity, timestamp=0.0)
    while not session.done:
        cell = simulate_user_step(policy, event.proposals, cell, rng)
        event = session.step(cell, opacity, timestamp=1000.0 * len(session.events))
    return session


def run_experiment(
    spec: ExperimentSpec, out_dir: str | Path | None = None
) -> tuple[AdaptationReport, list[DrawingSession]]:
    """Run seeded repetitions of a session and aggregate adaptation metrics.

    Session and user seeds derive only from the spec seed and the repetition
    index — not the mode — so adaptive and random runs of the same spec see
    identical simulated users.
    """
    report = AdaptationReport(mode=spec.config.mode)
    sessions = []
    for rep in range(spec.repetitions):
        config = replace(spec.config, seed=derive_seed(spec.config.seed, f"session:{rep}"))
        policy = parse_policy(spec.policy_spec)
        session = run_session(
            config,
            policy,
            user_seed=derive_seed(spec.config.seed, f"user:{rep}"),
            opacity=spec.opacity,
        )
        report.sessions.append(
            adaptation_metric(
                session.events, spec.groups, spec.window, spec.config.palette_size
            )
        )
        sessions.append(session)

    if out_dir is not None:
        export_experiment(spec, report, sessions, Path(out_dir))
    return report, sessions


def export_experiment(
    spec: ExperimentSpec,
    report: AdaptationReport,
    sessions: list[DrawingSession],
    out_dir: Path,
) -> None:
    """Write per-session JSONL logs and grid dumps plus a metrics CSV table."""
    out_dir.mkdir(parents=True, exist_ok=True)
    mode = spec.config.mode.value
    for rep, session in enumerate(sessions):
        write_session_log(out_dir / f"{mode}_session_{rep:03d}.jsonl", session)
        (out_dir / f"{mode}_grid_{rep:03d}.csv").write_text(
            session.canvas.export_csv(), encoding="utf-8"
        )
    with open(out_dir / f"{mode}_metrics.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["session", "mode", "dominant_group", "dominant_share",
             "window_dominant_group", "window_dominant_share", "inked_total"]
        )
        for rep, metrics in enumerate(report.sessions):
            writer.writerow(
                [rep, mode, metrics.dominant_group,
                 f"{metrics.dominant_share:.6f}",
                 metrics.window_dominant_group,
                 f"{metrics.window_dominant_share:.6f}",
                 sum(metrics.inked_counts)]
            )


def compare_modes(
    spec: ExperimentSpec, out_dir: str | Path | None = None
) -> tuple[AdaptationReport, AdaptationReport]:
    """Run the spec in adaptive and random mode with identical seeds/users.

    Returns (adaptive, random) reports with the adaptive report's
    ``baseline_delta`` filled in.
    """
    adaptive_spec = replace(spec, config=replace(spec.config, mode=AgentMode.ADAPTIVE))
    random_spec = replace(spec, config=replace(spec.config, mode=AgentMode.RANDOM))
    adaptive_report, _ = run_experiment(adaptive_spec, out_dir)
    random_report, _ = run_experiment(random_spec, out_dir)
    adaptive_report.baseline_delta = adaptive_report.window_share_delta(random_report)
    return adaptive_report, random_report
