"""Event sourcing: a session log replays to the identical final state.

Every step appends one event (inputs, proposals, rewards, inkings) to a
JSONL log. Re-running just the recorded pointer inputs through a fresh
session reproduces the canvas dump and all nine bandit snapshots byte for
byte — and any tampering with the log is detected.
"""

import tempfile
from pathlib import Path

from banditcanvas import (
    ReplayError,
    SessionConfig,
    read_session_log,
    replay,
    run_session,
    write_session_log,
)
from banditcanvas.simulate import ContrastSeeker

config = SessionConfig(seed=31, iterations=300)
session = run_session(config, ContrastSeeker(), user_seed=310)

log_path = Path(tempfile.gettempdir()) / "banditcanvas_session.jsonl"
write_session_log(log_path, session)
print(f"wrote {log_path} ({log_path.stat().st_size} bytes, "
      f"{len(session.events)} events)")

log = read_session_log(log_path)
rerun = replay(log.config, log.events)

print("grid dump identical: ", rerun.canvas.export_csv() == log.grid_csv)
print("bandit state identical:", rerun.agent.snapshot() == log.agent_snapshot)

# Tamper with one recorded step and the replay refuses it.
events = list(log.events)
broken = events[10].__class__(**{**events[10].__dict__, "step": 99})
events[10] = broken
try:
    replay(log.config, events)
except ReplayError as exc:
    print("tampered log rejected: ", exc)
