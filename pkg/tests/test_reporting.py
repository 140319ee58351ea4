from fractions import Fraction

from domination.bounds import verify_chain
from domination.reporting import CSV_FIELDS, format_cell, render_report, render_table, report_to_row, write_csv


class TestFormatCell:
    def test_values(self):
        assert format_cell(None) == ""
        assert format_cell(True) == "true"
        assert format_cell(False) == "false"
        assert format_cell(Fraction(4)) == "4/1"
        assert format_cell(7) == "7"


class TestRenderTable:
    def test_columns_aligned(self):
        text = render_table(("nom", "γ"), [("K4", True), ("petersen", Fraction(5, 2))])
        assert text.splitlines() == [
            "nom       γ",
            "--------  ----",
            "K4        true",
            "petersen  5/2",
        ]

    def test_report_lists_every_inequality(self, p4):
        report = verify_chain(p4, Fraction(2), 2, 2, label="P4")
        text = render_report(report)
        assert text.startswith("P4 : n=4, δ=1, Δ=2")
        assert text.count("✓") == len(report.checks)

    def test_missing_measure_shown_as_dash(self, p4):
        text = render_report(verify_chain(p4, Fraction(2), None, 2))
        line = next(l for l in text.splitlines() if l.startswith("gamma_f <= gamma"))
        assert line.endswith("-")
        assert "✗" not in text


class TestReportToRow:
    def test_keys_and_values(self, p4):
        row = report_to_row(verify_chain(p4, Fraction(2), 2, 2, label="P4"), seed=7)
        assert list(row) == CSV_FIELDS
        assert row['gamma_f_exact'] == "2/1"
        assert row['frac_lo'] == "4/3"
        assert row['cssf_bound'] == "8/3"
        assert row['ratio_bound'] == "≈2.09862"
        assert row['chain_ok'] == "true"
        assert row['seed'] == "7"
        assert row['ms_lp'] == row['ms_exact'] == row['ms_greedy'] == ""

    def test_timings(self, p4):
        row = report_to_row(verify_chain(p4, Fraction(2)), timings={'lp': 1.234, 'greedy': 0.06})
        assert row['ms_lp'] == "1.2"
        assert row['ms_greedy'] == "0.1"
        assert row['ms_exact'] == ""
        assert row['gamma'] == ""


class TestWriteCsv:
    def test_header_only(self, tmp_path):
        path = write_csv([], tmp_path / "sub" / "vide.csv")
        assert path.read_text(encoding='utf-8') == ",".join(CSV_FIELDS) + "\n"

    def test_extra_keys_ignored(self, tmp_path):
        path = write_csv([{'a': 1, 'b': 2, 'z': 3}], tmp_path / "x.csv", fieldnames=['a', 'b'])
        assert path.read_text(encoding='utf-8') == "a,b\n1,2\n"
