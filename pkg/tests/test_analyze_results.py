import importlib.util
import math
from pathlib import Path

import pandas as pd
import pytest

SCRIPT = Path(__file__).parent.parent / "Benchmark" / "analyze_results.py"


@pytest.fixture(scope="module")
def analyze():
    spec = importlib.util.spec_from_file_location("analyze_results", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture
def sweep_df():
    return pd.DataFrame({
        'label': ["a", "b", "c", "d"],
        'n': [8, 8, 16, 16],
        'gamma_f_exact': ["2/1", "5/2", "9/4", "9/4"],
        'gamma': [2, 3, 3, 4],
        'gamma_g': [3, 3, 4, 4],
        'chain_ok': ["true"] * 4,
    })


def test_rational_to_float(analyze):
    assert analyze.rational_to_float("64/27") == pytest.approx(64 / 27)
    assert analyze.rational_to_float("4") == 4
    assert math.isnan(analyze.rational_to_float(""))
    assert math.isnan(analyze.rational_to_float(float('nan')))


def test_analyze_random_sweep(analyze, sweep_df):
    stats = analyze.analyze_random_sweep(sweep_df)
    assert list(stats['n']) == [8, 16]
    assert list(stats['trials']) == [2, 2]
    assert stats.loc[0, 'gamma_f_mean'] == pytest.approx(2.25)
    assert stats.loc[1, 'gamma_over_log2_n_mean'] == pytest.approx(3.5 / 4)


def test_check_trends(analyze, sweep_df):
    trends = analyze.check_trends(analyze.analyze_random_sweep(sweep_df))
    assert trends == {
        'gamma_f_mean_in_band': True,
        'gamma_mean_non_decreasing': True,
        'gamma_over_log2_n_in_band': True,
        'gamma_over_gamma_f_increases': True,
    }


def test_check_trends_out_of_band(analyze, sweep_df):
    trends = analyze.check_trends(analyze.analyze_random_sweep(sweep_df), gamma_f_band=(3.0, 4.0))
    assert not trends['gamma_f_mean_in_band']


def test_check_trends_per_log_out_of_band(analyze, sweep_df):
    trends = analyze.check_trends(analyze.analyze_random_sweep(sweep_df), per_log2_band=(0.4, 0.85))
    assert not trends['gamma_over_log2_n_in_band']
    assert trends['gamma_f_mean_in_band']


def test_markdown_report(analyze, sweep_df, tmp_path):
    report = analyze.create_markdown_report({'random': sweep_df, 'bounds': None, 'constructions': None}, tmp_path)
    text = report.read_text(encoding='utf-8')
    assert "| 8 | 2 |" in text
    assert "✓ gamma_mean_non_decreasing" in text
    assert "violée : 0" in text


def test_load_skips_summaries(analyze, tmp_path, sweep_df):
    sweep_df.to_csv(tmp_path / "random_sweep_1.csv", index=False)
    pd.DataFrame({'n': [8]}).to_csv(tmp_path / "random_sweep_1.summary.csv", index=False)
    results = analyze.load_all_results(tmp_path)
    assert len(results['random']) == 4
    assert results['random'].loc[0, 'gamma_f_exact'] == "2/1"
    assert results['bounds'] is None
