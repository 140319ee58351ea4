#!/usr/bin/env python3
"""
Interface en ligne de commande : construction de graphes, calcul de
γ_f / γ / γ_g, balayages, tableau des majorants et certificats

Codes de sortie : 0 succès, 1 usage ou entrée invalide, 2 vérification
en échec, 3 budget dépassé.
"""

import argparse
import logging
import sys
from datetime import datetime
from fractions import Fraction
from pathlib import Path

from .bounds import approx
from .certificates import build_certificate, write_bundle
from .config import get_settings
from .constructions import ConstructionSpec, Family, build
from .errors import BudgetExceededError, CertificateError, DominationError
from .experiments import (ALL_MEASURES, BOUNDS_FIELDS, CONSTRUCTION_FIELDS, DEFAULT_N_LIST, DEFAULT_TRIALS,
                          aggregate_sweep, bounds_table, construction_sweep, default_bounds_graphs,
                          monte_carlo_dominating_fraction, random_sweep, run_trial)
from .graph_core import format_graph, read_graph, write_graph
from .reporting import format_cell, render_report, render_table, write_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_BUDGET = 3

MEASURE_CHOICES = ALL_MEASURES + ('bounds',)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser dont les erreurs d'usage sortent avec le code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"Erreur : {message}\n")


def _n_list(text):
    try:
        values = tuple(int(x) for x in text.split(',') if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"liste d'entiers attendue, reçu '{text}'") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"ordres >= 1 attendus, reçu '{text}'")
    return values


def _probability(text):
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"rationnel attendu (ex. 1/2), reçu '{text}'") from None
    if not 0 < p < 1:
        raise argparse.ArgumentTypeError(f"probabilité hors de ]0, 1[ : {text}")
    return p


def _which(text):
    values = tuple(x.strip() for x in text.split(',') if x.strip())
    unknown = [x for x in values if x not in MEASURE_CHOICES]
    if unknown or not values:
        raise argparse.ArgumentTypeError(f"mesures possibles : {','.join(MEASURE_CHOICES)} (reçu '{text}')")
    return values


def _timestamp():
    return datetime.now().strftime("%Y%m%d_%H%M%S")


def _banner(title):
    print("=" * 70)
    print(title)
    print("=" * 70)


def _default_out(settings, prefix, suffix=".csv"):
    return Path(settings.results_dir) / f"{prefix}_{_timestamp()}{suffix}"


# ============================================================================
# COMMANDES
# ============================================================================

def cmd_construct(args, settings):
    spec = ConstructionSpec(args.family, args.param, seed=args.seed, probability=args.p)
    g = build(spec, settings.torus_vertex_cap)
    if args.out is None:
        sys.stdout.write(format_graph(g))
        return EXIT_OK
    write_graph(g, args.out)
    print(f"✓ {spec.label} : n={g.n}, m={g.edge_count} → {args.out}")
    return EXIT_OK


def cmd_compute(args, settings):
    g = read_graph(args.graph)
    label = args.label or Path(args.graph).stem
    which = tuple(m for m in args.which if m != 'bounds')
    record = run_trial(g, label, which=which, settings=settings, method=args.method,
                       size_cap=args.size_cap, force=args.force, time_limit=args.limit_seconds)
    report = record.report

    _banner(f"=== {label} (n={g.n}, m={g.edge_count}) ===")
    if report.gamma_f is not None:
        print(f"γ_f = {format_cell(report.gamma_f)} {approx(report.gamma_f)}")
    if report.gamma is not None:
        print(f"γ   = {report.gamma}")
    if report.gamma_g is not None:
        print(f"γ_g = {report.gamma_g}")
    print()
    print(render_report(report), end="")

    if args.out:
        write_csv([record.to_row(args.timings)], args.out)
        print(f"✓ Résultats sauvegardés dans: {args.out}")

    for error in record.errors:
        print(f"✗ {error}")
    if record.errors:
        return EXIT_BUDGET
    if not report.chain_ok:
        print("✗ Chaîne d'inégalités violée : " + ", ".join(c.name for c in report.failures))
        return EXIT_VERIFICATION
    print("✓ Chaîne d'inégalités vérifiée" + (" (partielle)" if report.partial else ""))
    return EXIT_OK


def _print_progress(i, total, record):
    rep = record.report
    status = "✓" if record.chain_ok else "✗"
    print(f"[{i}/{total}] {record.label} : γ_f={format_cell(rep.gamma_f)} γ={format_cell(rep.gamma)} "
          f"γ_g={format_cell(rep.gamma_g)} {status}")


def cmd_random_sweep(args, settings):
    out = args.out or _default_out(settings, "random_sweep")
    _banner(f"=== Balayage aléatoire : n ∈ {list(args.n_list)}, {args.trials} essais, p={args.p} ===")
    records = random_sweep(args.n_list, args.trials, args.seed, args.p,
                           which=tuple(m for m in args.which if m != 'bounds'),
                           workers=args.workers, settings=settings, time_limit=args.limit_seconds,
                           progress=_print_progress)
    if args.workers > 1:
        for i, record in enumerate(records, 1):
            _print_progress(i, len(records), record)

    write_csv([r.to_row(args.timings) for r in records], out)
    print(f"\n✓ Résultats sauvegardés dans: {out}")
    if records:
        summary_file = Path(out).with_suffix('.summary.csv')
        aggregate_sweep(records).to_csv(summary_file, index=False, float_format='%.6g')
        print(f"✓ Agrégats par n sauvegardés dans: {summary_file}")

    for record in records:
        for error in record.errors:
            print(f"⚠️  {record.label} : {error}")
    failed = [r.label for r in records if not r.chain_ok]
    if failed:
        print(f"✗ Chaîne violée pour : {', '.join(failed)}")
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_bounds_table(args, settings):
    out = args.out or _default_out(settings, "bounds_table")
    if args.graphs:
        graphs = [(Path(p).stem, read_graph(p)) for p in args.graphs]
    else:
        graphs = default_bounds_graphs()
    _banner(f"=== Majorants de γ_g : {len(graphs)} graphes ===")

    def progress(i, total, row):
        if row.get('error'):
            print(f"[{i}/{total}] ✗ {row['label']} : {row['error']}")
        else:
            print(f"[{i}/{total}] ✓ {row['label']} : {row['tighter']}")

    rows = bounds_table(graphs, settings, progress)
    write_csv(rows, out, BOUNDS_FIELDS)
    print()
    print(render_table(("graphe", "(1+ln(1+Δ))·γ_f", "produit", "plus serré"),
                       [(r['label'], r.get('ratio_form'), r.get('cssf_form_dec'), r.get('tighter'))
                        for r in rows]), end="")
    print(f"\n✓ Résultats sauvegardés dans: {out}")
    if any(r.get('error') for r in rows):
        print("⚠️  Certaines lignes sont en erreur (colonne error)")
    return EXIT_OK


def cmd_certify(args, settings):
    g = read_graph(args.graph)
    label = args.label or Path(args.graph).stem
    out = args.out or Path(args.graph).with_suffix('.certificate.json')
    bundle = build_certificate(g, label, settings)
    write_bundle(bundle, out)
    print(f"✓ Dualité forte : γ_f = {format_cell(bundle.solution.value)} (écart 0)")
    print(f"✓ Packing glouton réalisable : total {format_cell(bundle.packing.total)} "
          f"{approx(bundle.packing.total)}, marge min {format_cell(bundle.packing_report.min_slack)}")
    print(f"✓ Sommes de poids : max {format_cell(bundle.audit.max_sum)} au sommet {bundle.audit.argmax}")
    print(f"✓ Certificats sauvegardés dans: {out}")
    return EXIT_OK


def cmd_construction_sweep(args, settings):
    out = args.out or _default_out(settings, "constructions")
    _banner("=== Balayage des constructions ===")
    rows = construction_sweep(args.t_values, settings=settings)
    write_csv(rows, out, CONSTRUCTION_FIELDS)
    for i, row in enumerate(rows, 1):
        status = "✓" if row['chain_ok'] == "true" else "✗"
        print(f"[{i}/{len(rows)}] {status} {row['label']} : γ_f={row['gamma_f_exact']} γ={row['gamma']} "
              f"γ_g={row['gamma_g']} γ_g/γ={row['gamma_g_over_gamma']}")
    print(f"\n✓ Résultats sauvegardés dans: {out}")
    return EXIT_OK if all(r['chain_ok'] == "true" for r in rows) else EXIT_VERIFICATION


def cmd_monte_carlo(args, settings):
    _banner(f"=== Monte-Carlo : n={args.n}, p={args.size}, {args.samples} échantillons ===")
    estimate = monte_carlo_dominating_fraction(args.n, args.size, args.samples, args.seed, args.p)
    print(f"Moyenne empirique : {estimate.mean:.6g}")
    print(f"Espérance exacte  : {estimate.expected:.6g}")
    print(f"Écart relatif     : {estimate.relative_error:.2%}")
    if estimate.relative_error > args.tolerance:
        print(f"✗ Écart supérieur à {args.tolerance:.0%}")
        return EXIT_VERIFICATION
    print(f"✓ Écart inférieur à {args.tolerance:.0%}")
    return EXIT_OK


# ============================================================================
# PARSEUR
# ============================================================================

def build_parser():
    description = "Nombres de domination : γ_f exact, γ exact, γ glouton et leurs bornes."
    parser = _Parser(prog="domination", description=description)
    parser.add_argument("--verbose", "-v", action="count", default=0,
                        help="Journalisation INFO (-v) ou DEBUG (-vv)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Construit un graphe d'une famille")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--param", "-t", "-n", type=int, required=True, help="Paramètre t (ou n pour random)")
    p.add_argument("--seed", type=int, default=0, help="Graine (random)")
    p.add_argument("--p", type=_probability, default=Fraction(1, 2), help="Probabilité d'arête (random)")
    p.add_argument("--out", "-o", type=Path, help="Fichier liste d'arêtes (stdout sinon)")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("compute", help="Calcule γ_f, γ, γ_g et vérifie les bornes")
    p.add_argument("graph", type=Path)
    p.add_argument("--which", type=_which, default=MEASURE_CHOICES,
                   help="Sous-ensemble de gamma_f,gamma,gamma_g,bounds")
    p.add_argument("--method", choices=["auto", "exhaustive", "branch_and_bound"], default="auto")
    p.add_argument("--size-cap", type=int, help="Taille maximale pour la recherche exhaustive")
    p.add_argument("--force", action="store_true", help="Ignorer les plafonds sur n")
    p.add_argument("--limit-seconds", type=float, help="Limite de temps du branch and bound")
    p.add_argument("--label", help="Nom du graphe (nom du fichier sinon)")
    p.add_argument("--timings", action="store_true", help="Remplir les colonnes ms_*")
    p.add_argument("--out", "-o", type=Path, help="Ligne CSV du résultat")
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("random-sweep", help="Balayage sur des graphes aléatoires G(n, p)")
    p.add_argument("--n-list", type=_n_list, default=DEFAULT_N_LIST)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, help="Graine maîtresse (DOMINATION_MASTER_SEED sinon)")
    p.add_argument("--p", type=_probability, default=Fraction(1, 2))
    p.add_argument("--which", type=_which, default=MEASURE_CHOICES)
    p.add_argument("--workers", type=int, default=1, help="Processus parallèles")
    p.add_argument("--limit-seconds", type=float, help="Limite de temps par essai (branch and bound)")
    p.add_argument("--timings", action="store_true", help="Remplir les colonnes ms_*")
    p.add_argument("--out", "-o", type=Path)
    p.set_defaults(handler=cmd_random_sweep)

    p = sub.add_parser("bounds-table", help="Compare les deux majorants de γ_g")
    p.add_argument("graphs", nargs="*", type=Path, help="Listes d'arêtes (balayage par défaut sinon)")
    p.add_argument("--out", "-o", type=Path)
    p.set_defaults(handler=cmd_bounds_table)

    p = sub.add_parser("certify", help="Écrit le paquet de certificats d'un graphe")
    p.add_argument("graph", type=Path)
    p.add_argument("--label")
    p.add_argument("--out", "-o", type=Path)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("construction-sweep", help="γ_f, γ, γ_g des familles J_t et H_t")
    p.add_argument("--t-values", type=_n_list, default=(4, 5, 6, 7))
    p.add_argument("--out", "-o", type=Path)
    p.set_defaults(handler=cmd_construction_sweep)

    p = sub.add_parser("monte-carlo", help="Nombre moyen de p-ensembles dominants de G(n, q)")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--size", type=int, default=2, help="Taille p des ensembles")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, help="Graine maîtresse")
    p.add_argument("--p", type=_probability, default=Fraction(1, 2), help="Probabilité d'arête q")
    p.add_argument("--tolerance", type=float, default=0.10, help="Écart relatif toléré")
    p.set_defaults(handler=cmd_monte_carlo)

    return parser


def main(argv=None):
    """Point d'entrée ; retourne le code de sortie"""
    args = build_parser().parse_args(argv)
    settings = get_settings()

    level = {0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s : %(message)s")

    try:
        return args.handler(args, settings)
    except BudgetExceededError as e:
        print(f"✗ {e}")
        return EXIT_BUDGET
    except CertificateError as e:
        print(f"✗ {e}")
        return EXIT_VERIFICATION
    except (DominationError, ValueError, OSError) as e:
        print(f"✗ Erreur : {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
