"""Tabular learning primitives: k-armed epsilon-greedy bandits and the
one-step Q-learning update.

A :class:`Bandit` keeps a per-arm sample-average value estimate and is the
unit of learning for the canvas agent (one bandit per neighborhood
direction). Everything here is deliberately dependency-free and seeded so
that whole drawing sessions replay bit-for-bit.
"""

from __future__ import annotations

import hashlib
import random
from typing import Hashable, Iterable


def derive_seed(base: int, label: str) -> int:
    """Derive an independent child seed from ``base`` and a text label.

    Uses blake2b rather than ``hash()`` so the derivation is stable across
    processes and Python versions (``hash`` is salted per process).
    """
    digest = hashlib.blake2b(f"{base}:{label}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class Bandit:
    """A k-armed bandit with sample-average estimates and epsilon-greedy choice.

    Value estimates ``q[a]`` are the arithmetic mean of all rewards handed to
    arm ``a`` so far; ``n[a]`` counts those rewards. Selection is greedy with
    probability ``1 - epsilon`` (ties broken by lowest arm index) and uniform
    over all k arms with probability ``epsilon``, so the net chance of the
    greedy arm is ``1 - epsilon + epsilon/k``.

    RNG discipline: every :meth:`select` call consumes exactly two draws from
    this bandit's private stream (one for the explore gate, one for the
    explored arm; the second draw is discarded on greedy picks). The stream
    state is therefore fully described by ``(seed, draws)``, which is what
    :meth:`snapshot` records and :meth:`restore` fast-forwards to.
    """

    def __init__(self, k: int, epsilon: float = 0.2, seed: int = 0):
        if k < 1:
            raise ValueError(f"bandit needs at least one arm, got k={k}")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
        self.k = k
        self.epsilon = epsilon
        self.seed = seed
        self.q = [0.0] * k
        self.n = [0] * k
        self.draws = 0
        self._rng = random.Random(seed)

    def greedy_arm(self) -> int:
        """Arm with the highest value estimate; ties go to the lowest index."""
        best = 0
        for arm in range(1, self.k):
            if self.q[arm] > self.q[best]:
                best = arm
        return best

    def select(self) -> int:
        """Pick an arm epsilon-greedily, consuming exactly two RNG draws."""
        gate = self._rng.random()
        pick = self._rng.random()
        self.draws += 2
        if gate < self.epsilon:
            return int(pick * self.k)  # pick < 1.0, so result is in 0..k-1
        return self.greedy_arm()

    def update(self, arm: int, reward: float) -> None:
        """Fold ``reward`` into arm's running mean: q += (r - q) / n."""
        if not 0 <= arm < self.k:
            raise ValueError(f"arm {arm} out of range for k={self.k}")
        self.n[arm] += 1
        self.q[arm] += (reward - self.q[arm]) / self.n[arm]

    def snapshot(self) -> str:
        """Serialize full state as a plain key=value text record.

        Floats are written with ``repr`` so restoring is exact.
        """
        return "\n".join(
            [
                f"k={self.k}",
                f"epsilon={self.epsilon!r}",
                f"seed={self.seed}",
                f"draws={self.draws}",
                "q=" + ",".join(repr(v) for v in self.q),
                "n=" + ",".join(str(c) for c in self.n),
            ]
        )

    @classmethod
    def restore(cls, record: str) -> "Bandit":
        """Rebuild a bandit from :meth:`snapshot` output, replaying RNG draws."""
        fields: dict[str, str] = {}
        for line in record.strip().splitlines():
            key, _, value = line.partition("=")
            fields[key] = value
        bandit = cls(
            k=int(fields["k"]),
            epsilon=float(fields["epsilon"]),
            seed=int(fields["seed"]),
        )
        bandit.q = [float(v) for v in fields["q"].split(",")]
        bandit.n = [int(v) for v in fields["n"].split(",")]
        for _ in range(int(fields["draws"])):
            bandit._rng.random()
        bandit.draws = int(fields["draws"])
        return bandit


class QLearner:
    """Tabular Q-learning update over hashable (state, action) pairs.

    Only the one-step value update is provided; unseen pairs read as 0.
    """

    def __init__(self, alpha: float, gamma: float):
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {alpha}")
        if not 0.0 <= gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {gamma}")
        self.alpha = alpha
        self.gamma = gamma
        self.q: dict[tuple[Hashable, Hashable], float] = {}

    def value(self, state: Hashable, action: Hashable) -> float:
        return self.q.get((state, action), 0.0)

    def update(
        self,
        state: Hashable,
        action: Hashable,
        reward: float,
        next_state_actions: Iterable[tuple[Hashable, Hashable]] = (),
    ) -> float:
        """Apply q += alpha * (reward + gamma * max_next - q); returns new q.

        ``next_state_actions`` lists the (state, action) pairs available after
        the transition; an empty iterable means a terminal state (max = 0).
        """
        best_next = max(
            (self.value(s, a) for s, a in next_state_actions),
            default=0.0,
        )
        current = self.value(state, action)
        updated = current + self.alpha * (reward + self.gamma * best_next - current)
        self.q[(state, action)] = updated
        return updated
