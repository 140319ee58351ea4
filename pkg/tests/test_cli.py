import csv
import json
from fractions import Fraction

import pytest

from domination.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, main
from domination.fractional_lp import DualityVerdict
from domination.reporting import CSV_FIELDS


@pytest.fixture(autouse=True)
def results_dir(tmp_path, monkeypatch):
    """Sorties par défaut dans un dossier temporaire"""
    out = tmp_path / "resultats"
    monkeypatch.setenv("DOMINATION_RESULTS_DIR", str(out))
    return out


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text("4 3\n0 1\n1 2\n2 3\n", encoding='utf-8')
    return path


class TestConstruct:
    def test_torus_to_stdout(self, capsys):
        assert main(["construct", "--family", "torus_J", "--param", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("64 832\n")
        assert len(out.splitlines()) == 833

    def test_random_single_vertex(self, capsys):
        assert main(["construct", "--family", "random", "-n", "1", "--seed", "7"]) == EXIT_OK
        assert capsys.readouterr().out == "1 0\n"

    def test_to_file(self, tmp_path, capsys):
        out = tmp_path / "h4.txt"
        assert main(["construct", "--family", "clique_chain_H", "-t", "4", "--out", str(out)]) == EXIT_OK
        assert out.read_text(encoding='utf-8').startswith("64 710\n")
        assert "clique_chain_H_4" in capsys.readouterr().out

    def test_unknown_family(self):
        with pytest.raises(SystemExit) as exc:
            main(["construct", "--family", "petersen", "--param", "2"])
        assert exc.value.code == EXIT_USAGE

    def test_parameter_below_minimum(self):
        assert main(["construct", "--family", "clique_chain_H", "--param", "2"]) == EXIT_USAGE


class TestCompute:
    def test_edgeless(self, tmp_path, capsys):
        path = tmp_path / "vide.txt"
        path.write_text("4 0\n", encoding='utf-8')
        assert main(["compute", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "γ_f = 4/1" in out
        assert "γ   = 4" in out
        assert "✓ Chaîne d'inégalités vérifiée" in out

    def test_csv_row(self, tmp_path, p4_file):
        out = tmp_path / "p4.csv"
        assert main(["compute", str(p4_file), "--timings", "--out", str(out)]) == EXIT_OK
        with open(out, encoding='utf-8') as f:
            rows = list(csv.DictReader(f))
        assert list(rows[0]) == CSV_FIELDS
        assert rows[0]['label'] == "p4"
        assert rows[0]['gamma_f_exact'] == "2/1"
        assert rows[0]['ms_lp'] != ""

    def test_partial_measures(self, p4_file, capsys):
        assert main(["compute", str(p4_file), "--which", "gamma_g"]) == EXIT_OK
        assert "(partielle)" in capsys.readouterr().out

    def test_format_error(self, tmp_path, capsys):
        path = tmp_path / "faux.txt"
        path.write_text("3 1\n0 5\n", encoding='utf-8')
        assert main(["compute", str(path)]) == EXIT_USAGE
        assert "Ligne 2" in capsys.readouterr().out

    def test_missing_file(self, tmp_path):
        assert main(["compute", str(tmp_path / "absent.txt")]) == EXIT_USAGE

    def test_budget_exceeded(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("DOMINATION_BNB_VERTEX_CAP", "10")
        path = tmp_path / "vide20.txt"
        path.write_text("20 0\n", encoding='utf-8')
        assert main(["compute", str(path), "--which", "gamma"]) == EXIT_BUDGET
        assert "bnb_vertex_cap" in capsys.readouterr().out

    def test_force_lifts_cap(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DOMINATION_BNB_VERTEX_CAP", "10")
        path = tmp_path / "vide20.txt"
        path.write_text("20 0\n", encoding='utf-8')
        assert main(["compute", str(path), "--which", "gamma", "--force"]) == EXIT_OK

    def test_bad_which(self, p4_file):
        with pytest.raises(SystemExit) as exc:
            main(["compute", str(p4_file), "--which", "gamma,delta"])
        assert exc.value.code == EXIT_USAGE


class TestCertify:
    def test_writes_json(self, p4_file, capsys):
        assert main(["certify", str(p4_file)]) == EXIT_OK
        data = json.loads(p4_file.with_suffix('.certificate.json').read_text(encoding='utf-8'))
        assert data['gamma_f'] == "2/1"
        assert "Dualité forte" in capsys.readouterr().out

    def test_failed_verification(self, p4_file, monkeypatch):
        monkeypatch.setattr("domination.certificates.verify_strong_duality",
                            lambda sol, g: DualityVerdict(Fraction(0), Fraction(0), ("falsifié",)))
        assert main(["certify", str(p4_file)]) == EXIT_VERIFICATION


class TestSweeps:
    def test_random_sweep_zero_trials(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["random-sweep", "--n-list", "10", "--trials", "0", "--out", str(out)]) == EXIT_OK
        assert out.read_text(encoding='utf-8') == ",".join(CSV_FIELDS) + "\n"
        assert not out.with_suffix('.summary.csv').exists()

    def test_random_sweep_is_reproducible(self, tmp_path, capsys):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["random-sweep", "--n-list", "8,10", "--trials", "2", "--seed", "42"]
        assert main(args + ["--out", str(first)]) == EXIT_OK
        assert main(args + ["--out", str(second)]) == EXIT_OK
        assert first.read_text(encoding='utf-8') == second.read_text(encoding='utf-8')
        assert first.with_suffix('.summary.csv').exists()
        assert "[4/4]" in capsys.readouterr().out

    def test_default_output_in_results_dir(self, results_dir):
        assert main(["random-sweep", "--n-list", "6", "--trials", "1"]) == EXIT_OK
        assert len(list(results_dir.glob("random_sweep_*.csv"))) == 2

    def test_bad_probability(self):
        with pytest.raises(SystemExit) as exc:
            main(["random-sweep", "--p", "3/2"])
        assert exc.value.code == EXIT_USAGE

    def test_bounds_table_from_files(self, tmp_path, p4_file):
        out = tmp_path / "bounds.csv"
        assert main(["bounds-table", str(p4_file), "--out", str(out)]) == EXIT_OK
        with open(out, encoding='utf-8') as f:
            rows = list(csv.DictReader(f))
        assert rows[0]['label'] == "p4"
        assert rows[0]['tighter'] in {"ratio_form", "cssf_form", "tie"}

    def test_monte_carlo(self, capsys):
        assert main(["monte-carlo", "--n", "8", "--samples", "20", "--tolerance", "10"]) == EXIT_OK
        assert "Espérance exacte" in capsys.readouterr().out
