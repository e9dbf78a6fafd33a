import json

import numpy as np
import pytest

from dtwmean.datasets import Dataset, synth_sines
from dtwmean.harness import (
    TrialRecord,
    percent_change_matrix,
    run_protocol_A,
    run_protocol_B,
    runtime_comparison,
    summarize,
    wins_matrix,
    write_records_csv,
    write_summary_json,
    write_trace_csv,
)


def rec(trial, variant, final, trace=None, size=4, epochs_run=1):
    if trace is None:
        trace = ((0, final * 2), (1, final))
    return TrialRecord(
        dataset="fx",
        trial=trial,
        size=size,
        seed=0,
        variant=variant,
        final_variation=final,
        visited_examples=epochs_run * size,
        epochs_run=epochs_run,
        trace=tuple(trace),
    )


@pytest.fixture(scope="module")
def small_dataset():
    return synth_sines(12, 8, 0.2, np.random.default_rng(99))


class TestWinsMatrix:
    def test_hand_fixture(self):
        records = [
            rec(0, "A", 1.0), rec(0, "B", 2.0),
            rec(1, "A", 1.0), rec(1, "B", 2.0),
            rec(2, "A", 1.0), rec(2, "B", 1.0),
        ]
        variants, wins = wins_matrix(records)
        i, j = variants.index("A"), variants.index("B")
        assert wins[i, j] == 100.0 * 2 / 3
        assert wins[j, i] == 0.0
        assert 100.0 - wins[i, j] - wins[j, i] == pytest.approx(100.0 / 3, rel=1e-12)

    def test_identical_traces(self):
        records = [rec(t, v, 1.5) for t in range(3) for v in ("A", "B")]
        _, wins = wins_matrix(records)
        assert np.array_equal(wins, np.zeros((2, 2)))

    def test_row_column_consistency(self):
        records = [
            rec(0, "A", 1.0), rec(0, "B", 2.0),
            rec(1, "A", 3.0), rec(1, "B", 2.0),
        ]
        _, wins = wins_matrix(records)
        assert np.all(wins + wins.T <= 100.0 + 1e-12)
        assert np.all(np.diag(wins) == 0.0)

    def test_mismatched_trials(self):
        records = [rec(0, "A", 1.0), rec(0, "B", 2.0), rec(1, "A", 1.0)]
        with pytest.raises(ValueError):
            wins_matrix(records)


class TestPercentChangeMatrix:
    def test_equal_values_give_zero(self):
        records = [rec(t, v, 2.0) for t in range(3) for v in ("A", "B")]
        _, pct = percent_change_matrix(records)
        assert np.array_equal(pct, np.zeros((2, 2)))

    def test_single_trial_fixture(self):
        records = [rec(0, "A", 1.0), rec(0, "B", 2.0)]
        variants, pct = percent_change_matrix(records)
        i, j = variants.index("A"), variants.index("B")
        assert pct[i, j] == 50.0
        assert pct[j, i] == -100.0

    def test_zero_denominator_excluded_with_warning(self):
        records = [
            rec(0, "A", 1.0), rec(0, "B", 0.0),
            rec(1, "A", 1.0), rec(1, "B", 2.0),
        ]
        with pytest.warns(UserWarning, match="zero-denominator"):
            variants, pct = percent_change_matrix(records)
        i, j = variants.index("A"), variants.index("B")
        assert pct[i, j] == 50.0  # only trial 1 survives

    def test_both_zero_contributes_zero(self):
        records = [rec(0, "A", 0.0), rec(0, "B", 0.0)]
        _, pct = percent_change_matrix(records)
        assert np.array_equal(pct, np.zeros((2, 2)))


class TestRuntimeComparison:
    def test_ssg_reaching_at_epoch_one(self):
        records = [
            rec(0, "MM-50", 1.0, trace=((0, 3.0), (1, 1.0)), size=10, epochs_run=3),
            rec(0, "SSG-50", 0.9, trace=((0, 3.0), (1, 0.9)), size=10, epochs_run=50),
        ]
        table = runtime_comparison(records)
        assert table["excluded_rate"] == 0.0
        cell = table["per_size"][10]
        assert cell["ssg_visited_median"] == 10.0
        assert cell["mm_visited_median"] == 30.0

    def test_identical_algorithms_delta_zero(self):
        trace = ((0, 2.0), (1, 1.0))
        records = [
            rec(0, "MM-50", 1.0, trace=trace, size=5, epochs_run=1),
            rec(0, "SSG-50", 1.0, trace=trace, size=5, epochs_run=1),
        ]
        table = runtime_comparison(records)
        assert table["per_size"][5]["delta_mean"] == 0.0

    def test_exclusion_rate(self):
        records = [
            rec(0, "MM-50", 1.0, trace=((0, 3.0), (1, 1.0)), size=5, epochs_run=1),
            rec(0, "SSG-50", 2.0, trace=((0, 3.0), (1, 2.0)), size=5, epochs_run=50),
            rec(1, "MM-50", 1.0, trace=((0, 3.0), (1, 1.0)), size=5, epochs_run=1),
            rec(1, "SSG-50", 0.5, trace=((0, 3.0), (1, 0.5)), size=5, epochs_run=50),
        ]
        table = runtime_comparison(records)
        assert table["excluded_trials"] == 1
        assert table["excluded_rate"] == 0.5

    def test_requires_full_variants(self):
        records = [rec(0, "A", 1.0), rec(0, "B", 1.0)]
        with pytest.raises(ValueError):
            runtime_comparison(records)


class TestProtocolA:
    def test_identical_series_all_zero_at_epoch_one(self, rng):
        x = rng.normal(size=(6, 1))
        ds = Dataset(name="copies", series=[x.copy() for _ in range(5)])
        records = run_protocol_A(ds, trials=2, epochs=5)
        for r in records:
            assert r.final_variation == pytest.approx(0.0, abs=1e-12)
            assert r.trace[-1][1] == pytest.approx(0.0, abs=1e-12)

    def test_single_trial_variant_structure(self, small_dataset):
        records = run_protocol_A(small_dataset, trials=1, epochs=5)
        assert sorted(r.variant for r in records) == [
            "MM-1", "MM-5", "SSG-1", "SSG-5", "SSG-e",
        ]

    def test_variant_derivation_consistency(self, small_dataset):
        records = run_protocol_A(small_dataset, trials=2, epochs=5)
        by = {(r.trial, r.variant): r for r in records}
        for trial in range(2):
            full = by[(trial, "SSG-5")]
            one = by[(trial, "SSG-1")]
            assert one.final_variation == dict(full.trace)[1]
            ssg_e = by[(trial, "SSG-e")]
            mm = by[(trial, "MM-5")]
            assert ssg_e.epochs_run == mm.epochs_run
            assert by[(trial, "MM-1")].final_variation == dict(mm.trace)[1]

    def test_epoch_suffix_bounds_epochs_run(self, small_dataset):
        for r in run_protocol_A(small_dataset, trials=1, epochs=5):
            tag = r.variant.rsplit("-", 1)[1]
            if tag.isdigit():
                assert r.epochs_run <= int(tag)

    def test_determinism(self, small_dataset):
        a = run_protocol_A(small_dataset, trials=2, epochs=4, seed=5)
        b = run_protocol_A(small_dataset, trials=2, epochs=4, seed=5)
        assert a == b

    def test_empty_dataset_rejected(self):
        with pytest.raises(ValueError):
            Dataset(name="e", series=[])


class TestProtocolB:
    def test_size_too_large(self, small_dataset):
        with pytest.raises(ValueError):
            run_protocol_B(small_dataset, sizes=[100], trials=1)

    def test_single_size_reduces_to_protocol_a_structure(self, small_dataset):
        records = run_protocol_B(small_dataset, sizes=[len(small_dataset)], trials=1, epochs=4)
        assert sorted(r.variant for r in records) == [
            "MM-1", "MM-4", "SSG-1", "SSG-4", "SSG-e",
        ]
        assert all(r.size == len(small_dataset) for r in records)

    def test_size_one_zero_variation(self, small_dataset):
        records = run_protocol_B(small_dataset, sizes=[1], trials=2, epochs=4)
        for r in records:
            if r.variant in ("MM-4", "SSG-4"):
                assert r.final_variation == pytest.approx(0.0, abs=1e-12)

    def test_determinism_and_serialization(self, small_dataset, tmp_path):
        out = {}
        for tag in ("a", "b"):
            records = run_protocol_B(small_dataset, sizes=[3, 6], trials=2, epochs=4, seed=1)
            write_records_csv(records, tmp_path / f"{tag}_records.csv")
            write_trace_csv(records, tmp_path / f"{tag}_trace.csv")
            write_summary_json(records, tmp_path / f"{tag}_summary.json")
            out[tag] = records
        assert out["a"] == out["b"]
        for name in ("records.csv", "trace.csv", "summary.json"):
            assert (tmp_path / f"a_{name}").read_bytes() == (tmp_path / f"b_{name}").read_bytes()

    def test_trace_csv_schema(self, small_dataset, tmp_path):
        records = run_protocol_B(small_dataset, sizes=[3], trials=1, epochs=3, seed=2)
        path = tmp_path / "trace.csv"
        write_trace_csv(records, path)
        header = path.read_text().splitlines()[0]
        assert header == "dataset,trial,size,variant,epoch,variation,visited,seed"

    def test_summary_json_schema(self, small_dataset, tmp_path):
        records = run_protocol_B(small_dataset, sizes=[4], trials=2, epochs=3, seed=2)
        path = tmp_path / "summary.json"
        write_summary_json(records, path)
        summary = json.loads(path.read_text())
        assert set(summary) >= {"variants", "wins", "pct_change", "runtime", "excluded_rate"}
        v = len(summary["variants"])
        assert len(summary["wins"]) == v and len(summary["wins"][0]) == v

    def test_summarize_matches_components(self, small_dataset):
        records = run_protocol_B(small_dataset, sizes=[4], trials=2, epochs=3, seed=2)
        summary = summarize(records)
        variants, wins = wins_matrix(records)
        assert summary["variants"] == variants
        assert summary["wins"] == wins.tolist()
