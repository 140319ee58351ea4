#!/usr/bin/env python3
"""
Script de benchmark : balayage aléatoire par défaut, tableau des majorants
de γ_g et balayage des constructions, chacun dans un CSV horodaté
"""

import argparse
import sys
import time
from datetime import datetime
from pathlib import Path

# Ajouter la racine du projet au path pour importer le paquet domination
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from domination.config import get_settings
from domination.experiments import (BOUNDS_FIELDS, CONSTRUCTION_FIELDS, DEFAULT_N_LIST, DEFAULT_TRIALS,
                                    aggregate_sweep, bounds_table, construction_sweep, random_sweep)
from domination.reporting import format_cell, write_csv


def run_random_sweep(results_dir, timestamp, trials, workers, settings):
    """
    Balayage G(n, 1/2) pour n = 40, 60, 80, 100

    Args:
        results_dir: Dossier des CSV
        timestamp: Horodatage commun aux fichiers de ce benchmark
        trials: Essais par ordre
        workers: Processus parallèles

    Returns:
        list: les TrialRecord
    """
    def progress(i, total, record):
        rep = record.report
        status = "✓" if record.chain_ok else "✗"
        print(f"[{i}/{total}] {status} {record.label} : γ_f={format_cell(rep.gamma_f)} "
              f"γ={format_cell(rep.gamma)} γ_g={format_cell(rep.gamma_g)}")

    start = time.time()
    records = random_sweep(DEFAULT_N_LIST, trials, settings.master_seed, workers=workers,
                           settings=settings, progress=progress)
    output_file = results_dir / f"random_sweep_{timestamp}.csv"
    write_csv([r.to_row(with_timings=True) for r in records], output_file)
    print(f"✓ Résultats sauvegardés dans: {output_file}")

    if records:
        summary = aggregate_sweep(records)
        summary_file = output_file.with_suffix('.summary.csv')
        summary.to_csv(summary_file, index=False, float_format='%.6g')
        print(f"✓ Agrégats sauvegardés dans: {summary_file}")

        print(f"\n📊 Statistiques ({time.time() - start:.1f}s):")
        for _, row in summary.iterrows():
            print(f"  - n={int(row['n']):4} : γ_f moyen {row['gamma_f_mean']:.4f} | "
                  f"γ moyen {row['gamma_mean']:.2f} | γ_g moyen {row['gamma_g_mean']:.2f}")

    for record in records:
        for error in record.errors:
            print(f"  ⚠️  {record.label} : {error}")
    return records


def run_bounds_table(results_dir, timestamp, settings):
    """Tableau par défaut : H_t (t=4..7) et cliques chevelues (t=4,8,16,32)"""
    def progress(i, total, row):
        if row.get('error'):
            print(f"[{i}/{total}] ✗ {row['label']} : {row['error']}")
        else:
            print(f"[{i}/{total}] ✓ {row['label']} : {row['ratio_form']} vs {row['cssf_form_dec']} "
                  f"→ {row['tighter']}")

    rows = bounds_table(settings=settings, progress=progress)
    output_file = results_dir / f"bounds_table_{timestamp}.csv"
    write_csv(rows, output_file, BOUNDS_FIELDS)
    print(f"✓ Résultats sauvegardés dans: {output_file}")
    return rows


def run_construction_sweep(results_dir, timestamp, settings):
    """J_t (t=1,2) et H_t (t=4..7)"""
    rows = construction_sweep(settings=settings)
    for i, row in enumerate(rows, 1):
        status = "✓" if row['chain_ok'] == "true" else "✗"
        print(f"[{i}/{len(rows)}] {status} {row['label']} : γ_f={row['gamma_f_exact']} γ={row['gamma']} "
              f"γ_g={row['gamma_g']} | γ/γ_f={row['gamma_over_gamma_f']} γ_g/γ={row['gamma_g_over_gamma']}")
    output_file = results_dir / f"constructions_{timestamp}.csv"
    write_csv(rows, output_file, CONSTRUCTION_FIELDS)
    print(f"✓ Résultats sauvegardés dans: {output_file}")
    return rows


def main():
    """Fonction principale"""
    parser = argparse.ArgumentParser(description="Reproduction complète des expériences.")
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="Essais par ordre n")
    parser.add_argument("--workers", type=int, default=1, help="Processus parallèles")
    args = parser.parse_args()

    settings = get_settings()
    results_dir = Path(settings.results_dir)
    results_dir.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")

    print("=" * 70)
    print("=== Benchmark des nombres de domination ===")
    print("=" * 70)
    print(f"\n✓ Dossier de résultats: {results_dir}")
    print(f"✓ Graine maîtresse: {settings.master_seed}")

    print("\n" + "=" * 70)
    print(f"[1/3] Balayage aléatoire - n ∈ {list(DEFAULT_N_LIST)}, {args.trials} essais")
    print("=" * 70)
    records = run_random_sweep(results_dir, timestamp, args.trials, args.workers, settings)

    print("\n" + "=" * 70)
    print("[2/3] Tableau des majorants de γ_g")
    print("=" * 70)
    run_bounds_table(results_dir, timestamp, settings)

    print("\n" + "=" * 70)
    print("[3/3] Balayage des constructions")
    print("=" * 70)
    rows = run_construction_sweep(results_dir, timestamp, settings)

    failed = [r.label for r in records if not r.chain_ok]
    failed += [r['label'] for r in rows if r['chain_ok'] != "true"]

    print("\n" + "=" * 70)
    if failed:
        print(f"✗ Chaîne d'inégalités violée pour : {', '.join(failed)}")
        print("=" * 70)
        return 2
    print("✅ Benchmark terminé, toutes les chaînes d'inégalités sont vérifiées")
    print("=" * 70)
    return 0


if __name__ == "__main__":
    sys.exit(main())
