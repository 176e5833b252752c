"""Adaptive drawing canvas: a grid whose proposed colors are chosen by
per-direction epsilon-greedy bandits that learn the user's preferences
from pointer movement."""

from .agent import (
    AgentMode,
    ColoristAgent,
    Direction,
    Movement,
    Palette,
    classify_movement,
)
from .calibration import (
    Calibration,
    CalibrationError,
    PointerSample,
    calibrate,
    load_calibration,
    save_calibration,
    to_cell,
    z_to_opacity,
)
from .grid import (
    Cell,
    GridCanvas,
    GridDims,
    MOORE_OFFSETS,
    Offset,
    PanelPaint,
    moore_neighborhood,
)
from .learners import Bandit, QLearner, derive_seed
from .session import (
    DrawingSession,
    ReplayError,
    SessionComplete,
    SessionConfig,
    SessionEvent,
    read_session_log,
    replay,
    write_session_log,
)
from .simulate import (
    AdaptationReport,
    BrightestSeeker,
    ContrastSeeker,
    ExperimentSpec,
    HuePreferrer,
    RandomWalker,
    adaptation_metric,
    compare_modes,
    run_experiment,
    run_session,
    simulate_user_step,
)

__version__ = "0.1.0"
