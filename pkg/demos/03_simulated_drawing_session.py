"""One full 500-step drawing session with a simulated user.

The user prefers reddish colors (arm 7) and walks onto whichever proposed
panel comes closest. Watch the proposal ring concentrate into one color
group as the bandits lock in, and render the finished drawing as ASCII.

Note the emergent quirk: because a movement pays every bandit in its cone
the same constant reward, value estimates of rewarded arms tie exactly and
the deterministic lowest-index tie-break decides the locked group. The
session reliably concentrates (that is the measured training effect), but
which group wins is set by the early reward history, not by the user's
target hue alone. The inked histogram still leans toward the user's
preference, since inking follows where the user actually walks.
"""

from banditcanvas import SessionConfig, adaptation_metric, run_session
from banditcanvas.simulate import HuePreferrer

config = SessionConfig(mode="adaptive", seed=7, iterations=500)
session = run_session(config, HuePreferrer(target=7), user_seed=70)

metrics = adaptation_metric(session.events)
print(f"painted panels: {len(session.canvas.painted)}")
print(f"inked-color histogram (arms 0..9): {metrics.inked_counts}")
print(f"dominant color group: {metrics.dominant_group} "
      f"(0=blue 1=mid 2=red), share {metrics.dominant_share:.2f}")
print(f"trailing-100 share: {metrics.window_dominant_share:.2f}")

print("\nconcentration of proposals in the dominant group over time:")
for step in range(49, 500, 50):
    share = metrics.concentration_curve[step]
    print(f"  step {step + 1:3d}: {'*' * int(share * 40):<40} {share:.2f}")

# Render the drawing: arm index for painted panels, '.' for white.
print("\nfinal canvas (digit = palette arm):")
for row in range(config.height):
    line = ""
    for col in range(config.width):
        paint = session.canvas.painted.get((col, row))
        line += str(paint.arm) if paint else "."
    print("  " + line)

print("\nbandit value estimates (up-direction bandit):")
from banditcanvas import Offset
up = session.agent.bandits[Offset(0, -1)]
print("  q:", [round(v, 2) for v in up.q])
print("  n:", up.n)
print("  greedy arm:", up.greedy_arm())
