"""A tour of the k-armed bandit that powers the canvas.

Each bandit keeps a running mean of the rewards seen per arm and picks
epsilon-greedily. Ten arms map onto the blue-to-red palette; here we watch
one bandit discover a "preferred" arm from noisy feedback.
"""

import random

from banditcanvas import Bandit

rng = random.Random(0)

# A bandit with ten arms, exploring 20% of the time.
bandit = Bandit(k=10, epsilon=0.2, seed=42)
print("fresh estimates:", bandit.q)

# Feed it a world where arm 7 pays 1.0 and everything else pays 0.5.
for _ in range(500):
    arm = bandit.select()
    reward = 1.0 if arm == 7 else 0.5
    bandit.update(arm, reward)

print("\nafter 500 rounds (arm 7 pays double):")
for arm in range(10):
    bar = "#" * bandit.n[arm]
    print(f"  arm {arm}: q={bandit.q[arm]:.3f} pulls={bandit.n[arm]:3d} {bar[:40]}")
print("greedy arm:", bandit.greedy_arm())

# Estimates are exact sample means: replaying the reward history by hand
# gives the same numbers.
history = []
check = Bandit(k=3, seed=1)
for _ in range(10):
    r = rng.choice([0.5, 1.0])
    check.update(0, r)
    history.append(r)
print("\nsample-average check:", check.q[0], "==", sum(history) / len(history))

# Selection is replayable: same seed, same calls, same choices. The whole
# drawing session relies on this.
a, b = Bandit(k=10, seed=7), Bandit(k=10, seed=7)
print("replayable:", [a.select() for _ in range(8)] == [b.select() for _ in range(8)])

# Snapshots capture everything, including the RNG position.
snap = bandit.snapshot()
resumed = Bandit.restore(snap)
print("snapshot resumes identically:",
      [resumed.select() for _ in range(5)] == [bandit.select() for _ in range(5)])
