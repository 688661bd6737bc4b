"""Benchmark harness: seeded suites, statistics, convergence export."""

import numpy as np
import pytest

import hardctrl as hc
from hardctrl.harness import (
    BenchmarkReport,
    RunRecord,
    read_convergence_csv,
    repeated_short_runs,
    run_suite,
    summarize,
    write_report_csv,
)
from hardctrl.optimizers import OptimizerTrace, default_config

from conftest import toy_qubit_problem


def small_suite(workers=1, base_seed=40, R=3):
    problem = toy_qubit_problem()
    cfg = default_config("de", dim=problem.dimension,
                         overrides={"max_iterations": 25, "population": 12})
    return run_suite(problem, "de", R, base_seed, config=cfg,
                     problem_id="toy", workers=workers)


def fake_record(run, final_l, problem="p", algorithm="a", iters=3):
    fitness = np.linspace(0.0, 1.0 - 10.0 ** final_l, iters)
    trace = OptimizerTrace(fitness, np.zeros(2), "max_iter")
    return RunRecord(run=run, seed=run, problem=problem, algorithm=algorithm,
                     trace=trace, final_L=final_l, success=final_l <= -4.0,
                     wall_time=0.0)


class TestRunSuite:
    def test_same_base_seed_is_bitwise_identical(self):
        a = small_suite()
        b = small_suite()
        for ra, rb in zip(a, b):
            assert ra.seed == rb.seed
            assert ra.final_L == rb.final_L
            assert np.array_equal(ra.trace.best_fitness, rb.trace.best_fitness)
            assert np.array_equal(ra.trace.best_vector, rb.trace.best_vector)

    def test_per_run_seed_derivation(self):
        records = small_suite(base_seed=77)
        assert [r.seed for r in records] == [77, 78, 79]

    def test_worker_count_does_not_change_results(self):
        serial = small_suite(workers=1)
        parallel = small_suite(workers=2)
        for rs, rp in zip(serial, parallel):
            assert rs.final_L == rp.final_L
            assert np.array_equal(rs.trace.best_fitness, rp.trace.best_fitness)

    def test_rejects_zero_runs(self):
        with pytest.raises(ValueError):
            run_suite(toy_qubit_problem(), "de", 0, 0)

    def test_success_flag_matches_threshold(self):
        records = small_suite()
        for rec in records:
            assert rec.success == (rec.final_L <= -4.0)


class TestSummarize:
    def test_hand_computed_statistics(self):
        records = [fake_record(0, -1.0), fake_record(1, -5.0), fake_record(2, -3.0)]
        rep = summarize(records, threshold=-4.0)
        assert rep.median == -3.0
        assert rep.best == -5.0
        assert rep.worst == -1.0
        assert rep.success_pct == pytest.approx(100.0 / 3.0)

    def test_lower_median_for_even_count(self):
        records = [fake_record(i, l) for i, l in enumerate([-5.0, -4.0, -3.0, -1.0])]
        assert summarize(records).median == -4.0

    def test_all_runs_at_clamp(self):
        records = [fake_record(i, -16.0) for i in range(4)]
        rep = summarize(records)
        assert rep.median == rep.best == rep.worst == -16.0
        assert rep.success_pct == 100.0

    def test_single_record(self):
        rep = summarize([fake_record(0, -2.5)])
        assert rep.median == rep.best == rep.worst == -2.5

    def test_duplicated_records_leave_order_stats_alone(self):
        records = [fake_record(i, l) for i, l in enumerate([-1.0, -6.0, -2.0])]
        rep1 = summarize(records)
        rep2 = summarize(records + records)
        assert (rep1.median, rep1.best, rep1.worst) == (rep2.median, rep2.best, rep2.worst)

    def test_success_rate_monotone_in_threshold(self):
        records = [fake_record(i, l) for i, l in enumerate([-1.0, -3.0, -5.0, -7.0])]
        rates = [summarize(records, threshold=t).success_pct
                 for t in (-1.0, -3.0, -5.0, -7.0, -9.0)]
        assert all(a >= b for a, b in zip(rates, rates[1:]))

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            summarize([])


class TestConvergenceExport:
    def test_row_count_and_header(self, tmp_path):
        path = tmp_path / "curves.csv"
        hc.export_convergence([fake_record(0, -2.0, iters=3)], path, "csv")
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "run,iteration,L"
        assert len(lines) == 1 + 3

    def test_csv_round_trip_is_exact(self, tmp_path):
        records = small_suite()
        path = tmp_path / "curves.csv"
        hc.export_convergence(records, path, "csv")
        loaded = read_convergence_csv(path)
        for rec in records:
            curve = rec.curve()
            got = loaded[rec.run]
            assert [it for it, _ in got] == list(range(len(curve)))
            assert np.array_equal(np.array([l for _, l in got]), curve)

    def test_json_export(self, tmp_path):
        import json

        path = tmp_path / "curves.json"
        hc.export_convergence(small_suite(), path, "json")
        payload = json.loads(path.read_text())
        assert len(payload) == 3
        assert all(set(entry) == {"run", "seed", "L"} for entry in payload)

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            hc.export_convergence([fake_record(0, -1.0)], tmp_path / "x", "xml")

    def test_empty_records(self, tmp_path):
        with pytest.raises(ValueError):
            hc.export_convergence([], tmp_path / "x.csv", "csv")


class TestRepeatedShortRuns:
    def test_single_repetition_matches_capped_suite(self):
        problem = toy_qubit_problem()
        cfg = default_config("krotov", dim=problem.dimension)
        rep = repeated_short_runs(problem, "krotov", repetitions=1, iterations_cap=20,
                                  base_seed=5, config=cfg, problem_id="toy")
        cfg2 = default_config("krotov", dim=problem.dimension,
                              overrides={"max_iterations": 20})
        records = run_suite(problem, "krotov", 1, 5, config=cfg2, problem_id="toy")
        direct = summarize(records)
        assert rep.median == direct.median
        assert rep.best == direct.best

    def test_cap_limits_iterations(self):
        problem = toy_qubit_problem()
        rep = repeated_short_runs(problem, "nelder-mead", repetitions=3,
                                  iterations_cap=5, base_seed=0, problem_id="toy")
        assert isinstance(rep, BenchmarkReport)
        assert rep.runs == 3

    def test_easy_objective_full_success_at_loose_threshold(self):
        problem = toy_qubit_problem()
        rep = repeated_short_runs(problem, "krotov", repetitions=4,
                                  iterations_cap=400, base_seed=1,
                                  threshold=-2.0, problem_id="toy")
        assert rep.success_pct == 100.0


class TestReportWriter:
    def test_columns_and_determinism(self, tmp_path):
        rep = summarize([fake_record(0, -2.0), fake_record(1, -4.5)])
        p1, p2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
        write_report_csv([rep], p1)
        write_report_csv([rep], p2)
        head = p1.read_text().splitlines()[0]
        assert head == "problem,algorithm,R,L_t,median,best,worst,success_pct,wall_time_s"
        assert p1.read_text() == p2.read_text()
