#!/usr/bin/env python3
"""
Script d'analyse des résultats de benchmark
Agrège les CSV de balayage et produit un rapport markdown
"""

import math
import sys
from pathlib import Path

import pandas as pd

# Ajouter la racine du projet au path pour importer le paquet domination
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from domination.experiments import GAMMA_F_BAND, GAMMA_PER_LOG2_BAND


def _load(results_dir, pattern):
    """Charge et concatène les CSV correspondant à un motif"""
    csv_files = sorted(f for f in results_dir.glob(pattern) if not f.name.endswith('.summary.csv'))
    if not csv_files:
        return None

    all_data = []
    for csv_file in csv_files:
        try:
            df = pd.read_csv(csv_file, dtype={'gamma_f_exact': str, 'cssf_bound': str,
                                              'frac_lo': str, 'frac_hi': str})
            df['source'] = csv_file.name
            all_data.append(df)
        except Exception as e:
            print(f"⚠️  Erreur lors du chargement de {csv_file.name}: {e}")

    if not all_data:
        return None
    return pd.concat(all_data, ignore_index=True)


def load_all_results(results_dir):
    """
    Charge les trois familles de CSV du dossier résultats

    Returns:
        dict: 'random', 'bounds', 'constructions' → DataFrame (ou None)
    """
    results = {
        'random': _load(results_dir, "random_sweep_*.csv"),
        'bounds': _load(results_dir, "bounds_table_*.csv"),
        'constructions': _load(results_dir, "constructions_*.csv"),
    }
    for name, df in results.items():
        if df is None:
            print(f"⚠️  Aucun fichier CSV '{name}' dans {results_dir}")
        else:
            print(f"✓ {len(df)} lignes '{name}' chargées")
    return results


def rational_to_float(text):
    """Convertit "num/den" en float (NaN si vide)"""
    if not isinstance(text, str) or not text:
        return math.nan
    num, _, den = text.partition('/')
    return int(num) / int(den or 1)


def analyze_random_sweep(df):
    """Statistiques par ordre n : γ_f, γ, γ_g et rapports γ/γ_f, γ_g/γ, γ/log2 n"""
    df = df.copy()
    df['gamma_f'] = df['gamma_f_exact'].map(rational_to_float)
    df['gamma_over_gamma_f'] = df['gamma'] / df['gamma_f']
    df['gamma_g_over_gamma'] = df['gamma_g'] / df['gamma']
    df['gamma_over_log2_n'] = df['gamma'] / df['n'].map(math.log2)

    grouped = df.groupby('n')
    stats = grouped.agg(
        trials=('gamma_f', 'size'),
        gamma_f_mean=('gamma_f', 'mean'),
        gamma_f_min=('gamma_f', 'min'),
        gamma_f_max=('gamma_f', 'max'),
        gamma_mean=('gamma', 'mean'),
        gamma_g_mean=('gamma_g', 'mean'),
        gamma_over_gamma_f_mean=('gamma_over_gamma_f', 'mean'),
        gamma_g_over_gamma_mean=('gamma_g_over_gamma', 'mean'),
        gamma_over_log2_n_mean=('gamma_over_log2_n', 'mean'),
    )
    return stats.reset_index()


def check_trends(stats, gamma_f_band=GAMMA_F_BAND, per_log2_band=GAMMA_PER_LOG2_BAND):
    """
    Tendances attendues d'un balayage aléatoire

    Les bandes par défaut sont celles figées dans domination.experiments
    (les énoncés sur G(n, 1/2) sont asymptotiques).

    Returns:
        dict: nom de la tendance → booléen
    """
    stats = stats.sort_values('n')
    low, high = gamma_f_band
    per_log_low, per_log_high = per_log2_band
    gamma_means = stats['gamma_mean'].tolist()
    ratios = stats['gamma_over_gamma_f_mean'].tolist()
    return {
        'gamma_f_mean_in_band': bool(stats['gamma_f_mean'].between(low, high).all()),
        'gamma_mean_non_decreasing': all(a <= b for a, b in zip(gamma_means, gamma_means[1:])),
        'gamma_over_log2_n_in_band': bool(stats['gamma_over_log2_n_mean'].between(per_log_low, per_log_high).all()),
        'gamma_over_gamma_f_increases': len(ratios) >= 2 and ratios[-1] > ratios[0],
    }


def analyze_bounds(df):
    """Nombre de lignes par famille et par verdict « plus serré »"""
    df = df.copy()
    df['family'] = df['label'].str.rsplit('_', n=1).str[0]
    return df.groupby(['family', 'tighter'], dropna=False).size().reset_index(name='count')


def create_markdown_report(results, analysis_dir):
    """Crée un rapport résumé en markdown avec tableaux"""
    report_file = analysis_dir / "summary_report.md"

    with open(report_file, 'w', encoding='utf-8') as f:
        f.write("# Rapport d'analyse - Nombres de domination\n\n")

        random_df = results.get('random')
        if random_df is not None and len(random_df) > 0:
            stats = analyze_random_sweep(random_df)
            f.write("## 🎲 Graphes aléatoires G(n, 1/2)\n\n")
            f.write("| n | Essais | γ_f moyen | γ_f min | γ_f max | γ moyen | γ_g moyen | γ/γ_f | γ_g/γ | γ/log2 n |\n")
            f.write("|---|--------|-----------|---------|---------|---------|-----------|-------|-------|----------|\n")
            for _, row in stats.iterrows():
                f.write(f"| {int(row['n'])} | {int(row['trials'])} | {row['gamma_f_mean']:.4f} | "
                        f"{row['gamma_f_min']:.4f} | {row['gamma_f_max']:.4f} | {row['gamma_mean']:.2f} | "
                        f"{row['gamma_g_mean']:.2f} | {row['gamma_over_gamma_f_mean']:.3f} | "
                        f"{row['gamma_g_over_gamma_mean']:.3f} | {row['gamma_over_log2_n_mean']:.3f} |\n")
            f.write("\n")

            f.write("### Tendances\n\n")
            for name, ok in check_trends(stats).items():
                f.write(f"- {'✓' if ok else '✗'} {name}\n")
            f.write("\n")

            chain_failures = random_df[random_df['chain_ok'].astype(str).str.lower() != 'true']
            f.write(f"Lignes avec chaîne d'inégalités violée : {len(chain_failures)}\n\n")

        bounds_df = results.get('bounds')
        if bounds_df is not None and len(bounds_df) > 0:
            f.write("## 📐 Majorants de γ_g\n\n")
            f.write("| Graphe | n | δ | Δ | γ_f | γ_g | (1+ln(1+Δ))·γ_f | Produit | Plus serré |\n")
            f.write("|--------|---|---|---|-----|-----|-----------------|---------|------------|\n")
            for _, row in bounds_df.iterrows():
                f.write(f"| {row['label']} | {row['n']} | {row['delta']} | {row['Delta']} | "
                        f"{row['gamma_f_exact']} | {row['gamma_g']} | {row['ratio_form']} | "
                        f"{row['cssf_form_dec']} | {row['tighter']} |\n")
            f.write("\n")

        constructions_df = results.get('constructions')
        if constructions_df is not None and len(constructions_df) > 0:
            f.write("## 🧱 Constructions\n\n")
            f.write("| Graphe | n | γ_f | γ | γ_g | γ/γ_f | γ_g/γ | Témoin |\n")
            f.write("|--------|---|-----|---|-----|-------|-------|--------|\n")
            for _, row in constructions_df.iterrows():
                f.write(f"| {row['label']} | {row['n']} | {row['gamma_f_exact']} | {row['gamma']} | "
                        f"{row['gamma_g']} | {row['gamma_over_gamma_f']} | {row['gamma_g_over_gamma']} | "
                        f"{row['witness_ok']} |\n")
            f.write("\n")

    print(f"✓ Rapport markdown sauvegardé : {report_file}")
    return report_file


def main():
    """Fonction principale"""
    print("=" * 70)
    print("=== Analyse des résultats de benchmark ===")
    print("=" * 70)

    # Dossiers
    benchmark_dir = Path(__file__).parent
    results_dir = benchmark_dir / "resultats"
    analysis_dir = benchmark_dir / "analyse"

    analysis_dir.mkdir(exist_ok=True)
    print(f"\n✓ Dossier d'analyse : {analysis_dir}")

    results = load_all_results(results_dir)
    if all(df is None for df in results.values()):
        print("\n⚠️  Aucune donnée à analyser")
        return

    if results['random'] is not None:
        print("\n1️⃣  Statistiques des graphes aléatoires...")
        stats = analyze_random_sweep(results['random'])
        output_file = analysis_dir / "stats_random_sweep.csv"
        stats.to_csv(output_file, index=False, float_format='%.4f')
        print(f"   ✓ {output_file.name}")

    if results['bounds'] is not None:
        print("\n2️⃣  Comparaison des majorants...")
        output_file = analysis_dir / "stats_bounds.csv"
        analyze_bounds(results['bounds']).to_csv(output_file, index=False)
        print(f"   ✓ {output_file.name}")

    print("\n3️⃣  Génération du rapport markdown...")
    create_markdown_report(results, analysis_dir)

    print("\n" + "=" * 70)
    print("✅ Analyse terminée !")
    print("=" * 70)
    print(f"\n📁 Tous les fichiers d'analyse sont disponibles dans : {analysis_dir}")


if __name__ == "__main__":
    main()
