"""CLI smoke tests."""

import pytest

from banditcanvas.cli import build_parser, main


def test_simulate_writes_outputs(tmp_path, capsys):
    code = main(
        [
            "simulate",
            "--mode", "adaptive",
            "--policy", "hue:7",
            "--iterations", "20",
            "--reps", "2",
            "--seed", "3",
            "--out", str(tmp_path),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "mean dominant-group share" in out
    assert (tmp_path / "adaptive_metrics.csv").exists()
    assert (tmp_path / "adaptive_session_001.jsonl").exists()


def test_simulate_random_mode_runs_without_out_dir(capsys):
    assert main(["simulate", "--mode", "random", "--policy", "walker",
                 "--iterations", "10", "--reps", "1"]) == 0
    assert "uniform baseline" in capsys.readouterr().out


def test_moved_onto_scheme_accepted():
    assert main(["simulate", "--reward-scheme", "moved-onto",
                 "--iterations", "10", "--reps", "1"]) == 0


def test_serve_flags_parse():
    args = build_parser().parse_args(["serve", "--port", "9000", "--dwell-ms", "1500",
                                      "--epsilon", "0.1"])
    assert args.port == 9000
    assert args.dwell_ms == 1500
    assert args.epsilon == 0.1


def test_unknown_policy_fails_loudly():
    with pytest.raises(ValueError):
        main(["simulate", "--policy", "telepath", "--iterations", "10", "--reps", "1"])
