import io

import pytest

from signrank import BoolMatrix, UsageError
from signrank.experiment import (
    CSV_COLUMNS,
    TIMING_COLUMNS,
    ExperimentConfig,
    experiment_csv,
    generate_matrix,
    instance_seed,
    run_experiment,
    strip_timing,
    write_csv,
)


class TestGenerators:
    def test_identity(self):
        assert generate_matrix("identity", n=3) == BoolMatrix.identity(3)

    def test_complement_identity(self):
        assert generate_matrix("complement-identity", n=2).rows == ((0, 1), (1, 0))

    def test_random_density_extremes(self):
        assert generate_matrix("random-density", 3, 4, density=0.0, seed=1) == BoolMatrix.zeros(3, 4)
        assert generate_matrix("random-density", 3, 4, density=1.0, seed=1) == BoolMatrix.ones(3, 4)

    def test_seeded(self):
        a = generate_matrix("random-density", 6, 6, seed=11)
        assert a == generate_matrix("random-density", 6, 6, seed=11)
        assert a != generate_matrix("random-density", 6, 6, seed=12)

    def test_rectangle_sum(self):
        assert generate_matrix("rectangle-sum", 4, 4, k=0, seed=3).is_zero()
        M = generate_matrix("rectangle-sum", 5, 5, k=1, seed=3)
        # the OR of one rectangle is a rectangle: rank 1
        supports = {r for r in M.rows if any(r)}
        assert len(supports) == 1

    def test_errors(self):
        with pytest.raises(UsageError):
            generate_matrix("nope", 2, 2)
        with pytest.raises(UsageError):
            generate_matrix("random-density", 2, None)
        with pytest.raises(UsageError):
            generate_matrix("random-density", 2, 2, density=1.5)
        with pytest.raises(UsageError):
            generate_matrix("identity")

    def test_instance_seed(self):
        assert instance_seed(0, 5) == 5
        assert instance_seed(2, 0) == 2000006


class TestExperiment:
    def test_empty_config(self):
        with pytest.raises(UsageError):
            list(run_experiment(ExperimentConfig()))

    def test_zero_count(self):
        with pytest.raises(UsageError):
            list(run_experiment(ExperimentConfig(generator="identity", n=2)))

    def test_exhaustive_3x3(self):
        recs = list(run_experiment(ExperimentConfig(generator="exhaustive", m=3, n=3)))
        assert len(recs) == 512
        assert len({r.matrix for r in recs}) == 512
        assert all(r.ur_exhausted and r.p_exhausted for r in recs)
        assert all(r.rank <= r.ur <= r.p and r.ur <= r.terms for r in recs)

    def test_exhaustive_too_large(self):
        with pytest.raises(UsageError):
            list(run_experiment(ExperimentConfig(generator="exhaustive", m=5, n=5)))

    def test_identity_sandwich(self):
        rec, = run_experiment(ExperimentConfig(generator="identity", count=1, n=4))
        assert (rec.rank, rec.ur, rec.p) == (4, 4, 4)
        # an off-diagonal 2x2 block of zeros beats any single one-cell
        assert rec.mono_value == 0 and rec.mono_density == "1/4"

    def test_deterministic_csv(self):
        cfg = ExperimentConfig(generator="random-density", count=20, m=5, n=5, seed=7, budget_nodes=500)
        a = experiment_csv(cfg, timing=False)
        assert a == experiment_csv(cfg, timing=False)
        assert a == strip_timing(experiment_csv(cfg))
        assert a.splitlines()[0].split(",") == [c for c in CSV_COLUMNS if c not in TIMING_COLUMNS]
        assert len(a.splitlines()) == 21

    def test_parallel_matches_serial(self):
        cfg = ExperimentConfig(generator="rectangle-sum", count=24, m=5, n=5, k=3, seed=2, jobs=2)
        serial = ExperimentConfig(**{**cfg.__dict__, "jobs": 1})
        assert experiment_csv(cfg, timing=False) == experiment_csv(serial, timing=False)

    def test_skips(self):
        cfg = ExperimentConfig(generator="random-density", count=3, m=4, n=4, oracles=False, mono=False)
        buf = io.StringIO()
        write_csv(run_experiment(cfg), buf, timing=False)
        header, *rows = buf.getvalue().splitlines()
        cols = header.split(",")
        for row in rows:
            cells = dict(zip(cols, row.split(",")))
            assert cells["ur"] == "" and cells["p"] == "" and cells["mono_value"] == ""
            assert int(cells["terms"]) <= 2 * int(cells["indep_size"])
