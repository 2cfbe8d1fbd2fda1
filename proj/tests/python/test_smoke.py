"""Smoke tests for the python module: wiring, not physics. The C++ suites
own the numerical contracts; here we only confirm the bindings expose them
faithfully."""

import math

import numpy as np
import pytest

import neqc


def test_zero_state_basics():
    s = neqc.zero_state(3)
    assert s.n_qubits == 3
    assert s.dim == 8
    amps = s.amplitudes()
    assert amps.shape == (8,)
    assert amps[0] == 1.0 + 0.0j
    assert neqc.cost(s) == 0.0
    assert neqc.prob_zero(s, 1) == 1.0


def test_gates_and_fidelity():
    s = neqc.apply_ry(neqc.zero_state(1), 0, math.pi)
    assert abs(s.amplitudes()[1] - 1.0) < 1e-12
    assert neqc.fidelity(s, neqc.zero_state(1)) < 1e-12

    h = neqc.haar_random_state(3, seed=7)
    h2 = neqc.haar_random_state(3, seed=7)
    assert neqc.fidelity(h, h2) == pytest.approx(1.0, abs=1e-12)
    assert h.norm() == pytest.approx(1.0, abs=1e-12)


def test_structures_and_evaluation():
    assert neqc.block_count(3) == 10
    c = neqc.random_structure(3, 10, seed=5)
    assert c.param_count == 49
    assert len(c.entanglers) == 10

    back = neqc.structure_from_json(c.to_json())
    assert back.entanglers == c.entanglers

    out = neqc.evaluate(c, [0.0] * c.param_count, neqc.zero_state(3))
    assert neqc.cost(out) == 0.0

    with pytest.raises(ValueError):
        neqc.evaluate(c, [0.0] * 3, neqc.zero_state(3))


def test_gradient_matches_finite_difference():
    c = neqc.random_structure(3, 10, seed=6)
    rng = np.random.default_rng(0)
    params = rng.uniform(0.0, 2.0 * math.pi, c.param_count)
    inp = neqc.haar_random_state(3, seed=8)
    value, grad = neqc.circuit_cost_grad(c, params.tolist(), inp)
    assert grad.shape == (c.param_count,)
    assert value == neqc.cost(neqc.evaluate(c, params.tolist(), inp))

    i, h = 11, 1e-5
    up = params.copy()
    up[i] += h
    dn = params.copy()
    dn[i] -= h
    fd = (
        neqc.cost(neqc.evaluate(c, up.tolist(), inp))
        - neqc.cost(neqc.evaluate(c, dn.tolist(), inp))
    ) / (2 * h)
    assert grad[i] == pytest.approx(fd, rel=1e-4, abs=1e-7)


def test_training_round_trip():
    cfg = neqc.TrainConfig()
    cfg.n_qubits = 3
    cfg.model = neqc.Model.NEQC_NN
    cfg.max_iterations = 15
    structure = neqc.random_structure(3, 10, seed=9)
    record = neqc.train_one(cfg, structure, neqc.haar_random_state(3, 10), 4)
    assert 0 < record.iterations_used <= 15
    assert record.final_loss == record.loss_history[-1]
    assert not record.failed

    back = neqc.run_record_from_json(record.to_json())
    assert back.loss_history == record.loss_history
    assert back.stop_reason == record.stop_reason


def test_experiment_and_analysis():
    cfg = neqc.TrainConfig()
    cfg.max_iterations = 15
    records = neqc.run_experiment(
        3, [neqc.Model.SQC, neqc.Model.NEQC_NN], runs=2, base_seed=3, proto=cfg
    )
    assert len(records) == 4
    assert records[0].structure.entanglers == records[1].structure.entanglers

    expr = neqc.expressibility_from_record(records[1], seed=5, k=200)
    assert expr > 0.0

    assert neqc.haar_bin_prob(0.0, 1.0, 3) == pytest.approx(1.0, abs=1e-15)
    kl = neqc.haar_expressibility(3, seed=2, k=500)
    assert kl < 0.1

    values, center = neqc.landscape_from_record(records[0], seed=1, resolution=6)
    assert values.shape == (6, 6)
    assert center == records[0].final_loss
    assert np.all(values >= 0.0) and np.all(values <= 1.0)
