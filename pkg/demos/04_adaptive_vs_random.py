"""The control experiment: adaptive learning vs random color proposals.

Twenty seeded sessions per mode, identical simulated users in both. The
random mode is the null: bandits untouched, proposals uniform, modal-group
share pinned to the analytic baseline. The adaptive mode concentrates
proposals into one color group — the training effect, measured instead of
eyeballed.
"""

from banditcanvas import ExperimentSpec, SessionConfig
from banditcanvas.simulate import compare_modes, uniform_modal_share

spec = ExperimentSpec(
    config=SessionConfig(iterations=500, seed=42),
    policy_spec="hue:7",
    repetitions=20,
)
print("running 20 adaptive + 20 random sessions (same users)...")
adaptive, control = compare_modes(spec)

print(f"\n{'':24s}{'adaptive':>10s}{'random':>10s}")
print(f"{'overall modal share':24s}{adaptive.mean_dominant_share:>10.3f}"
      f"{control.mean_dominant_share:>10.3f}")
print(f"{'trailing-100 modal share':24s}{adaptive.mean_window_share:>10.3f}"
      f"{control.mean_window_share:>10.3f}")
print(f"{'analytic uniform baseline':24s}{'':>10s}{uniform_modal_share():>10.3f}")
print(f"\ntraining effect (share delta): {adaptive.baseline_delta:.3f}")

print("\nper-session trailing shares:")
for i, (a, r) in enumerate(zip(adaptive.sessions, control.sessions)):
    print(f"  seed {i:2d}: adaptive {a.window_dominant_share:.2f}  "
          f"random {r.window_dominant_share:.2f}")
