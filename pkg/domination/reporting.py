"""
Mise en forme des résultats : tableaux à colonnes fixes pour la console
et schéma CSV figé des essais
"""

import csv
from decimal import ROUND_CEILING
from fractions import Fraction
from pathlib import Path

from wcwidth import wcswidth

from .bounds import BoundsReport, approx, to_decimal

# Schéma CSV versionné : ne pas réordonner
CSV_FIELDS = ['label', 'n', 'seed', 'delta', 'Delta', 'gamma_f_exact', 'gamma_f_dec',
              'gamma', 'gamma_g', 'frac_lo', 'frac_hi', 'ratio_bound', 'cssf_bound',
              'chain_ok', 'ms_lp', 'ms_exact', 'ms_greedy']


def format_cell(value) -> str:
    """Rendu d'une valeur : rationnels en "num/den", booléens en true/false, None vide"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _pad(text: str, width: int) -> str:
    # wcswidth compte les symboles (γ, ≈, ✓) pour une colonne chacun
    return text + " " * max(0, width - wcswidth(text))


def render_table(headers, rows) -> str:
    """
    Tableau texte à colonnes alignées

    Args:
        headers: Titres des colonnes
        rows: Lignes (séquences de valeurs, mises en forme par format_cell)

    Returns:
        str: le tableau, une ligne de tirets sous les titres
    """
    cells = [[format_cell(v) for v in row] for row in rows]
    widths = [wcswidth(h) for h in headers]
    for row in cells:
        for i, text in enumerate(row):
            widths[i] = max(widths[i], wcswidth(text))

    lines = ["  ".join(_pad(h, w) for h, w in zip(headers, widths)).rstrip(),
             "  ".join("-" * w for w in widths)]
    lines.extend("  ".join(_pad(t, w) for t, w in zip(row, widths)).rstrip() for row in cells)
    return "\n".join(lines) + "\n"


def render_report(report: BoundsReport) -> str:
    """Rapport de bornes : en-tête du graphe puis une ligne par inégalité"""
    title = report.label or "graphe"
    header = (f"{title} : n={report.n}, δ={report.min_degree}, Δ={report.max_degree}, "
              f"1+ln(1+Δ) {approx(report.ratio_hi)}")
    rows = []
    for check in report.checks:
        verdict = {True: "✓", False: "✗", None: "-"}[check.holds]
        rows.append((check.name, _render_value(check.lhs), _render_value(check.rhs), verdict))
    return header + "\n" + render_table(("inégalité", "gauche", "droite", "ok"), rows)


def _render_value(value) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{format_cell(value)} {approx(value)}"
    return format_cell(value)


def ratio_bound_cell(report: BoundsReport) -> str:
    """1+ln(1+Δ) arrondi vers le haut à 6 chiffres significatifs"""
    return f"≈{to_decimal(report.ratio_hi, 6, ROUND_CEILING)}"


def report_to_row(report: BoundsReport, seed=None, timings=None) -> dict:
    """
    Ligne CSV d'un rapport de bornes

    Args:
        report: Rapport produit par verify_chain
        seed: Graine du graphe (graphes aléatoires)
        timings: Durées en ms par phase ('lp', 'exact', 'greedy'), colonnes vides sinon

    Returns:
        dict: valeurs déjà mises en forme, clés de CSV_FIELDS
    """
    timings = timings or {}
    gamma_f = report.gamma_f
    return {
        'label': report.label,
        'n': report.n,
        'seed': format_cell(seed),
        'delta': report.min_degree,
        'Delta': report.max_degree,
        'gamma_f_exact': format_cell(gamma_f),
        'gamma_f_dec': "" if gamma_f is None else approx(gamma_f),
        'gamma': format_cell(report.gamma),
        'gamma_g': format_cell(report.gamma_g),
        'frac_lo': format_cell(report.frac_lower),
        'frac_hi': format_cell(report.frac_upper),
        'ratio_bound': ratio_bound_cell(report),
        'cssf_bound': format_cell(report.cssf_bound),
        'chain_ok': format_cell(report.chain_ok),
        'ms_lp': _ms(timings.get('lp')),
        'ms_exact': _ms(timings.get('exact')),
        'ms_greedy': _ms(timings.get('greedy')),
    }


def _ms(value) -> str:
    return "" if value is None else f"{value:.1f}"


def write_csv(rows, output_file, fieldnames=None) -> Path:
    """
    Sauvegarde des lignes dans un fichier CSV (en-tête seul si rows est vide)

    Args:
        rows: Liste de dictionnaires
        output_file: Chemin du fichier CSV
        fieldnames: Colonnes (CSV_FIELDS par défaut)

    Returns:
        Path: le chemin écrit
    """
    output_file = Path(output_file)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, 'w', newline='', encoding='utf-8') as csvfile:
        writer = csv.DictWriter(csvfile, fieldnames=fieldnames or CSV_FIELDS,
                                extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    return output_file
