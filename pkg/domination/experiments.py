"""
Expériences : essais sur un graphe, balayages aléatoires reproductibles,
tableau comparatif des deux majorants de γ_g, balayage des constructions
et estimation Monte-Carlo des p-ensembles dominants
"""

from __future__ import annotations

import hashlib
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from math import comb

import pandas as pd

from .bounds import BoundsReport, approx, compare_gg_bounds, expected_dominating_psets, to_decimal, \
    verify_chain
from .config import Settings, get_settings
from .constructions import ConstructionSpec, Family, build, clique_chain_S, random_graph, torus_diagonal
from .errors import BudgetExceededError, DominationError
from .exact import solve_gamma
from .fractional_lp import solve_gamma_f
from .graph_core import Graph, is_dominating
from .greedy import greedy_sequence
from .reporting import CSV_FIELDS, format_cell, report_to_row

logger = logging.getLogger(__name__)

ALL_MEASURES = ('gamma_f', 'gamma', 'gamma_g')

# Balayage aléatoire par défaut
DEFAULT_N_LIST = (40, 60, 80, 100)
DEFAULT_TRIALS = 20

# Bandes figées sur le balayage par défaut (graine 20240611) : γ_f moyen mesuré
# 1.99, 1.95, 1.99, 2.00 et γ/log2 n moyen entre 0.49 et 0.55 pour n = 40..100.
# n/(1+Δ) < 2 dès que Δ > n/2 : à ces ordres γ_f reste autour de 2, souvent sous 2.
GAMMA_F_BAND = (1.9, 2.6)
GAMMA_PER_LOG2_BAND = (0.4, 1.2)

# Tableau des majorants par défaut
DEFAULT_CLIQUE_CHAIN_T = (4, 5, 6, 7)
DEFAULT_HAIRY_T = (4, 8, 16, 32)
DEFAULT_TORUS_T = (1, 2)


def derive_seed(master_seed: int, n: int, index: int) -> int:
    """Graine d'un essai : 8 premiers octets (gros-boutistes) de SHA-256("master:n:index")"""
    digest = hashlib.sha256(f"{master_seed}:{n}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], 'big')


# ============================================================================
# ESSAI SUR UN GRAPHE
# ============================================================================

@dataclass(frozen=True)
class TrialRecord:
    """Mesures d'un graphe et rapport de bornes calculé sur ces mesures"""

    label: str
    n: int
    report: BoundsReport
    seed: int | None = None
    index: int = 0
    timings: dict = field(default_factory=dict)
    errors: tuple[str, ...] = ()

    @property
    def chain_ok(self) -> bool:
        return self.report.chain_ok

    def to_row(self, with_timings: bool = False) -> dict:
        return report_to_row(self.report, self.seed, self.timings if with_timings else None)


def run_trial(g: Graph, label: str = "", seed: int | None = None, which=ALL_MEASURES,
              settings: Settings | None = None, index: int = 0, method: str = "auto",
              size_cap: int | None = None, force: bool = False,
              time_limit: float | None = None) -> TrialRecord:
    """
    Calcule les mesures demandées puis vérifie la chaîne d'inégalités

    Un budget dépassé n'interrompt pas l'essai : la mesure reste vide et
    le message est conservé dans ``errors``.

    Args:
        g: Le graphe
        label: Nom du graphe
        seed: Graine (graphes aléatoires)
        which: Sous-ensemble de ('gamma_f', 'gamma', 'gamma_g')
        settings: Réglages
        method: Méthode du solveur exact

    Returns:
        TrialRecord: mesures, rapport et durées en ms
    """
    settings = settings or get_settings()
    which = set(which)
    timings = {}
    errors = []
    gamma_f = gamma = gamma_g = None

    if 'gamma_f' in which:
        start = time.perf_counter()
        try:
            gamma_f = solve_gamma_f(g, vertex_cap=g.n if force else settings.lp_vertex_cap).value
        except BudgetExceededError as e:
            errors.append(str(e))
        timings['lp'] = (time.perf_counter() - start) * 1000

    if 'gamma' in which:
        start = time.perf_counter()
        try:
            gamma = solve_gamma(g, method=method, size_cap=size_cap, time_limit=time_limit,
                                force=force, settings=settings).value
        except BudgetExceededError as e:
            errors.append(str(e))
        timings['exact'] = (time.perf_counter() - start) * 1000

    if 'gamma_g' in which:
        start = time.perf_counter()
        gamma_g = greedy_sequence(g).m
        timings['greedy'] = (time.perf_counter() - start) * 1000

    report = verify_chain(g, gamma_f, gamma, gamma_g, label=label, digits=settings.ln_digits)
    if not report.chain_ok:
        logger.warning("Chaîne d'inégalités violée pour %s : %s", label,
                       [c.name for c in report.failures])
    return TrialRecord(label, g.n, report, seed, index, timings, tuple(errors))


# ============================================================================
# BALAYAGE ALÉATOIRE
# ============================================================================

def _random_trial(item) -> TrialRecord:
    n, index, seed, p, which, settings, time_limit = item
    g = random_graph(n, seed, p)
    return run_trial(g, f"random_n{n}_i{index}", seed=seed, which=which, settings=settings,
                     index=index, time_limit=time_limit)


def random_sweep(n_list=DEFAULT_N_LIST, trials: int = DEFAULT_TRIALS, master_seed: int | None = None,
                 p=Fraction(1, 2), which=ALL_MEASURES, workers: int = 1,
                 settings: Settings | None = None, time_limit: float | None = None,
                 progress=None) -> list[TrialRecord]:
    """
    Essais sur des graphes G(n, p) dont les graines dérivent de (master_seed, n, i)

    Args:
        n_list: Ordres des graphes
        trials: Essais par ordre
        master_seed: Graine maîtresse (DOMINATION_MASTER_SEED par défaut)
        p: Probabilité d'arête
        workers: Processus parallèles (l'ordre des lignes n'en dépend pas)
        progress: Rappel optionnel progress(i, total, record)

    Returns:
        list: TrialRecord triés par (n, indice d'essai)
    """
    settings = settings or get_settings()
    master_seed = settings.master_seed if master_seed is None else master_seed
    p = Fraction(p)
    items = [(n, i, derive_seed(master_seed, n, i), p, tuple(which), settings, time_limit)
             for n in n_list for i in range(trials)]

    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
            records = list(pool.map(_random_trial, items))
    else:
        records = []
        for item in items:
            records.append(_random_trial(item))
            if progress:
                progress(len(records), len(items), records[-1])

    return sorted(records, key=lambda r: (r.n, r.index))


def records_frame(records) -> pd.DataFrame:
    """Mesures numériques des essais, une ligne par essai"""
    rows = []
    for r in records:
        rep = r.report
        gf = None if rep.gamma_f is None else float(rep.gamma_f)
        rows.append({
            'label': r.label,
            'n': r.n,
            'gamma_f': gf,
            'gamma': rep.gamma,
            'gamma_g': rep.gamma_g,
            'gamma_over_gamma_f': None if gf is None or rep.gamma is None else rep.gamma / gf,
            'gamma_g_over_gamma': None if rep.gamma is None or rep.gamma_g is None else rep.gamma_g / rep.gamma,
            'chain_ok': r.chain_ok,
        })
    columns = ['label', 'n', 'gamma_f', 'gamma', 'gamma_g', 'gamma_over_gamma_f',
               'gamma_g_over_gamma', 'chain_ok']
    return pd.DataFrame(rows, columns=columns)


def aggregate_sweep(records) -> pd.DataFrame:
    """
    Agrégats par ordre n : moyenne, minimum et maximum de chaque mesure

    Returns:
        pd.DataFrame: une ligne par n, colonnes "<mesure>_<stat>" et "trials"
    """
    df = records_frame(records)
    measures = ['gamma_f', 'gamma', 'gamma_g', 'gamma_over_gamma_f', 'gamma_g_over_gamma']
    for col in measures:
        df[col] = pd.to_numeric(df[col], errors='coerce')
    summary = df.groupby('n')[measures].agg(['mean', 'min', 'max'])
    summary.columns = [f"{measure}_{stat}" for measure, stat in summary.columns]
    summary['trials'] = df.groupby('n').size()
    return summary.reset_index()


# ============================================================================
# TABLEAU DES MAJORANTS DE γ_g
# ============================================================================

BOUNDS_FIELDS = ['label', 'n', 'delta', 'Delta', 'gamma_f_exact', 'gamma_g',
                 'ratio_form', 'cssf_form', 'cssf_form_dec', 'tighter', 'error']


def default_bounds_graphs():
    """(label, spec) du tableau par défaut : H_t pour t=4..7, cliques chevelues t=4,8,16,32"""
    specs = [ConstructionSpec(Family.CLIQUE_CHAIN_H, t) for t in DEFAULT_CLIQUE_CHAIN_T]
    specs += [ConstructionSpec(Family.HAIRY_CLIQUE, t) for t in DEFAULT_HAIRY_T]
    return [(spec.label, spec) for spec in specs]


def bounds_row(g: Graph, label: str, settings: Settings | None = None) -> dict:
    """
    Une ligne du tableau comparatif ; un échec est consigné dans la colonne error

    Returns:
        dict: valeurs mises en forme, clés de BOUNDS_FIELDS
    """
    settings = settings or get_settings()
    row = {'label': label, 'n': g.n, 'delta': min(g.degrees), 'Delta': max(g.degrees)}
    try:
        gamma_f = solve_gamma_f(g, vertex_cap=settings.lp_vertex_cap).value
        comparison = compare_gg_bounds(g, gamma_f, settings.ln_digits)
    except DominationError as e:
        row['error'] = str(e)
        return row
    row.update({
        'gamma_f_exact': format_cell(gamma_f),
        'gamma_g': greedy_sequence(g).m,
        'ratio_form': f"≈{to_decimal(Fraction(comparison.ratio_form), 6)}",
        'cssf_form': format_cell(comparison.cssf_form),
        'cssf_form_dec': approx(comparison.cssf_form),
        'tighter': comparison.tighter.value,
        'error': "",
    })
    return row


def bounds_table(graphs=None, settings: Settings | None = None, progress=None) -> list[dict]:
    """
    Tableau des deux majorants sans constante de γ_g

    Args:
        graphs: Liste de (label, Graph | ConstructionSpec) ; balayage par défaut sinon
        settings: Réglages

    Returns:
        list: une ligne par graphe
    """
    settings = settings or get_settings()
    graphs = graphs if graphs is not None else default_bounds_graphs()
    rows = []
    for i, (label, item) in enumerate(graphs, 1):
        try:
            g = build(item, settings.torus_vertex_cap) if isinstance(item, ConstructionSpec) else item
        except DominationError as e:
            rows.append({'label': label, 'error': str(e)})
        else:
            rows.append(bounds_row(g, label, settings))
        if progress:
            progress(i, len(graphs), rows[-1])
    return rows


# ============================================================================
# BALAYAGE DES CONSTRUCTIONS
# ============================================================================

CONSTRUCTION_FIELDS = CSV_FIELDS + ['gamma_over_gamma_f', 'gamma_g_over_gamma', 'witness_ok', 'error']


def construction_sweep(t_values=DEFAULT_CLIQUE_CHAIN_T, torus_t=DEFAULT_TORUS_T,
                       settings: Settings | None = None) -> list[dict]:
    """
    Lignes H_t (rapport γ_g/γ = t/4) et J_t (rapport γ/γ_f)

    γ est calculé par branch and bound sans plafond sur n (limite de temps
    conservée). Le témoin connu de chaque famille (S pour H_t, la diagonale
    pour J_t) est vérifié à part.

    Returns:
        list: lignes de CONSTRUCTION_FIELDS
    """
    settings = settings or get_settings()
    items = [(ConstructionSpec(Family.TORUS_J, t), torus_diagonal(t)) for t in torus_t]
    items += [(ConstructionSpec(Family.CLIQUE_CHAIN_H, t), clique_chain_S(t)) for t in t_values]

    rows = []
    for spec, witness in items:
        g = build(spec, settings.torus_vertex_cap)
        record = run_trial(g, spec.label, settings=settings, force=True)
        rep = record.report
        row = record.to_row()
        row['gamma_over_gamma_f'] = format_cell(
            None if rep.gamma is None or rep.gamma_f is None else rep.gamma / rep.gamma_f)
        row['gamma_g_over_gamma'] = format_cell(
            None if rep.gamma is None or rep.gamma_g is None else Fraction(rep.gamma_g, rep.gamma))
        row['witness_ok'] = format_cell(is_dominating(g, witness))
        row['error'] = "; ".join(record.errors)
        rows.append(row)
    return rows


# ============================================================================
# MONTE-CARLO DES p-ENSEMBLES DOMINANTS
# ============================================================================

@dataclass(frozen=True)
class MonteCarloEstimate:
    n: int
    p: int
    samples: int
    mean: float
    expected: Decimal

    @property
    def relative_error(self) -> float:
        expected = float(self.expected)
        return abs(self.mean - expected) / expected if expected else float('inf')


def count_dominating_psets(g: Graph, p: int) -> int:
    """Nombre de p-ensembles dominants (énumération complète)"""
    masks = g.closed_masks
    full = g.full_mask
    count = 0
    for subset in combinations(range(g.n), p):
        mask = 0
        for v in subset:
            mask |= masks[v]
        if mask == full:
            count += 1
    return count


def monte_carlo_dominating_fraction(n: int, p: int, samples: int, master_seed: int | None = None,
                                    edge_probability=Fraction(1, 2)) -> MonteCarloEstimate:
    """
    Nombre moyen de p-ensembles dominants sur des échantillons G(n, q)

    Comparé à l'espérance exacte C(n,p)·[1-(1-q)^p]^{n-p}.

    Args:
        n: Ordre des graphes
        p: Taille des ensembles
        samples: Nombre d'échantillons (graine de l'échantillon i : derive_seed(master, n, i))
        edge_probability: q

    Returns:
        MonteCarloEstimate: moyenne empirique et espérance
    """
    if samples < 1:
        raise ValueError(f"samples doit être >= 1 (reçu {samples})")
    expected = expected_dominating_psets(n, p, edge_probability)
    master_seed = get_settings().master_seed if master_seed is None else master_seed
    total = 0
    for i in range(samples):
        g = random_graph(n, derive_seed(master_seed, n, i), edge_probability)
        total += count_dominating_psets(g, p)
    mean = total / samples
    logger.info("Monte-Carlo n=%d p=%d : moyenne %.4f pour %d p-ensembles (espérance %s)",
                n, p, mean, comb(n, p), expected)
    return MonteCarloEstimate(n, p, samples, mean, expected)
