"""Command-line entry points: headless experiments and the live service.

    banditcanvas simulate --mode adaptive --policy hue:7 --reps 20 --out runs/
    banditcanvas serve --port 8787 --dwell-ms 2000 --epsilon 0.2
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .agent import AgentMode
from .service import DEFAULT_DWELL_MS, DEFAULT_EPSILON, DEFAULT_PORT, run_service
from .session import SessionConfig
from .simulate import ExperimentSpec, run_experiment, uniform_modal_share


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banditcanvas",
        description="Adaptive drawing canvas: simulations and the live session service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run seeded simulated-user experiments")
    sim.add_argument("--mode", choices=["adaptive", "random"], default="adaptive")
    sim.add_argument(
        "--policy",
        default="hue:7",
        help="simulated user: hue:TARGET[:TOL], brightest, contrast or walker",
    )
    sim.add_argument("--iterations", type=int, default=500)
    sim.add_argument("--reps", type=int, default=20)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--epsilon", type=float, default=0.2)
    sim.add_argument("--reward-scheme", choices=["cone", "moved-onto"], default="cone")
    sim.add_argument("--out", type=Path, default=None, help="directory for logs and CSVs")

    serve = sub.add_parser("serve", help="host live drawing sessions over WebSocket")
    serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    serve.add_argument("--dwell-ms", type=int, default=DEFAULT_DWELL_MS)
    serve.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)

    return parser


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        config=SessionConfig(
            mode=AgentMode(args.mode),
            seed=args.seed,
            iterations=args.iterations,
            epsilon=args.epsilon,
            reward_scheme=args.reward_scheme,
        ),
        policy_spec=args.policy,
        repetitions=args.reps,
    )
    report, _ = run_experiment(spec, out_dir=args.out)
    print(f"mode={args.mode} policy={args.policy} reps={args.reps} "
          f"iterations={args.iterations} seed={args.seed}")
    print(f"mean dominant-group share (all steps):      {report.mean_dominant_share:.3f}")
    print(f"mean dominant-group share (trailing {spec.window}): {report.mean_window_share:.3f}")
    print(f"uniform baseline:                           {uniform_modal_share():.3f}")
    if args.out is not None:
        print(f"logs and metrics written to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    run_service(port=args.port, dwell_ms=args.dwell_ms, epsilon=args.epsilon)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args)
    if args.command == "serve":
        return cmd_serve(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
