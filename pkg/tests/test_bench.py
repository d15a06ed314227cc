import subprocess
import sys

import numpy as np
import pytest

from betfree.bench import (
    CSV_COLUMNS,
    ExperimentConfig,
    full_matrix_regime_problem,
    holdout_set,
    loss_and_grad,
    make_problem,
    run_experiment,
)
from betfree.cli import main
from betfree.learners import ConfigurationError, regret_at


@pytest.fixture(scope="module")
def problem():
    return make_problem(dim=6, cond=20.0, target_mode="min_eig", seed=1)


def test_loss_at_optimum(problem):
    loss, g = loss_and_grad(problem, problem.target, np.ones(6))
    assert loss == 0 and np.all(g == 0)


def test_loss_direct_formula():
    p = make_problem(dim=2, cond=2.0, seed=0)
    w = p.target + np.array([-2.0, 5.0])
    loss, g = loss_and_grad(p, w, np.array([1.0, 0.0]))
    assert loss == pytest.approx(2.0)
    np.testing.assert_array_equal(g, [-1.0, 0.0])


def test_loss_orthogonal_direction():
    p = make_problem(dim=2, cond=2.0, seed=0)
    loss, g = loss_and_grad(p, p.target + np.array([0.0, 1.0]), np.array([1.0, 0.0]))
    assert loss == 0 and np.all(g == 0)


@pytest.mark.parametrize("mode,col", [("max_eig", 0), ("min_eig", -1)])
def test_target_is_unit_eigenvector(mode, col):
    p = make_problem(dim=5, cond=10.0, target_mode=mode, seed=2)
    np.testing.assert_array_equal(p.target, p.cov.basis[:, col])
    assert abs(np.linalg.norm(p.target) - 1) < 1e-12


def test_holdout_shared_across_optimizers(problem):
    np.testing.assert_array_equal(holdout_set(problem, 10), holdout_set(problem, 10))


def test_unknown_optimizer():
    with pytest.raises(ConfigurationError):
        ExperimentConfig(optimizer="sgd")


@pytest.mark.parametrize("name", ["recursive", "diag", "doubling1d", "adagrad"])
def test_run_records_and_ledger(name):
    cfg = ExperimentConfig(optimizer=name, dim=6, steps=450, eval_every=100, holdout=50,
                           cond_number=20.0, lr=0.1, keep_ledger=True)
    res = run_experiment(cfg)
    assert [r.step for r in res.records] == [100, 200, 300, 400, 450]
    p = make_problem(6, 20.0, "min_eig", 0)
    assert abs(res.records[-1].regret - regret_at(res.ledger, p.target)) < 1e-9
    assert (res.records[-1].wealth is None) == (name == "adagrad")


def test_momentum_and_clamp_run():
    cfg = ExperimentConfig(dim=5, steps=300, holdout=20, cond_number=5.0, momentum=True, init_clamp=True)
    assert np.isfinite(run_experiment(cfg).records[-1].holdout_loss)


def test_csv_format(tmp_path):
    out = tmp_path / "run.csv"
    run_experiment(ExperimentConfig(optimizer="adagrad", dim=4, steps=200, holdout=10, cond_number=3.0,
                                    gmax_scale=False, out=str(out)))
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    cells = lines[1].split(",")
    assert cells[0] == "100" and cells[4] == "" and cells[5] == ""
    assert (tmp_path / "run.csv.meta.json").exists()


def test_biased_stream_respects_l1():
    stream = full_matrix_regime_problem(5, 10.0, 0.25, seed=0)
    for t, g in zip(range(500), stream):
        assert np.sum(np.abs(g)) <= 1 + 1e-12
    assert abs(np.linalg.norm(stream.x_min) - 1) < 1e-12


def test_cli_run(tmp_path, capsys):
    out = tmp_path / "a.csv"
    code = main(["run", "--optimizer", "recursive", "--dim", "5", "--steps", "300", "--holdout", "20",
                 "--cond-number", "10", "--target", "max-eig", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("step,")


def test_cli_bool_flags(tmp_path):
    code = main(["run", "--optimizer", "diag", "--dim", "4", "--steps", "100", "--holdout", "5",
                 "--gmax-scale", "true", "--momentum", "yes", "--init-clamp", "0", "--out", str(tmp_path / "b.csv")])
    assert code == 0


def test_cli_contract_violation_exit_code(tmp_path):
    code = main(["run", "--optimizer", "diag", "--dim", "4", "--steps", "100", "--holdout", "5",
                 "--gmax-scale", "false", "--out", str(tmp_path / "c.csv")])
    assert code == 2


def test_cli_verify_entry_point():
    proc = subprocess.run([sys.executable, "-m", "betfree.cli", "verify", "--quick"], capture_output=True, text=True)
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 6
    failed = any(line.startswith("[FAIL]") for line in lines)
    assert proc.returncode == (2 if failed else 0)
