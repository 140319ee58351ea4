"""
Paquet de certificats d'un graphe : couple LP primal/dual, trace gloutonne,
packing normalisé et audit des sommes de poids, tous re-vérifiés avant écriture
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from decimal import ROUND_FLOOR
from pathlib import Path

from .bounds import approx, to_decimal
from .config import Settings, get_settings
from .errors import CertificateError
from .fractional_lp import FractionalSolution, format_rational, solution_to_dict, solve_gamma_f, \
    verify_strong_duality
from .graph_core import Graph, WeightingReport, VertexWeighting, check_weighting
from .greedy import GreedyTrace, NeighborhoodAudit, greedy_sequence, harmonic_order_check, \
    neighborhood_weight_bound_check, packing_certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CertificateBundle:
    label: str
    graph: Graph
    solution: FractionalSolution
    trace: GreedyTrace
    packing: VertexWeighting
    packing_report: WeightingReport
    audit: NeighborhoodAudit
    harmonic_failures: tuple[tuple[int, int], ...]


def build_certificate(g: Graph, label: str = "", settings: Settings | None = None) -> CertificateBundle:
    """
    Calcule puis re-vérifie tous les certificats de g

    Args:
        g: Le graphe
        label: Nom du graphe
        settings: Réglages (plafond LP, précision de ln)

    Returns:
        CertificateBundle: paquet vérifié

    Raises:
        CertificateError: au premier certificat qui ne passe pas la re-vérification
    """
    settings = settings or get_settings()
    solution = solve_gamma_f(g, vertex_cap=settings.lp_vertex_cap)
    trace = greedy_sequence(g)
    packing = packing_certificate(g, trace, settings.ln_digits)
    bundle = CertificateBundle(
        label=label,
        graph=g,
        solution=solution,
        trace=trace,
        packing=packing,
        packing_report=check_weighting(g, packing),
        audit=neighborhood_weight_bound_check(g, trace, settings.ln_digits),
        harmonic_failures=harmonic_order_check(g, trace),
    )
    verify_bundle(bundle)
    logger.info("Certificats vérifiés pour %s (n=%d)", label or "graphe", g.n)
    return bundle


def verify_bundle(bundle: CertificateBundle) -> None:
    """Re-vérification indépendante ; lève CertificateError avec la contrainte violée"""
    g = bundle.graph
    verdict = verify_strong_duality(bundle.solution, g)
    if not verdict:
        raise CertificateError('strong_duality', "; ".join(verdict.violations))

    report = check_weighting(g, bundle.packing)
    if not report.feasible:
        raise CertificateError('packing_feasibility', f"sommets {list(report.violated)}")
    if bundle.trace.total_weight != bundle.trace.m:
        raise CertificateError('greedy_weight_total',
                               f"Σw = {bundle.trace.total_weight} != γ_g = {bundle.trace.m}")
    if bundle.packing.total > bundle.solution.value:
        raise CertificateError('packing_below_gamma_f',
                               f"{bundle.packing.total} > γ_f = {bundle.solution.value}")
    if not bundle.audit.ok:
        raise CertificateError('neighborhood_weight_sum', f"sommets {list(bundle.audit.violated)}")
    if bundle.harmonic_failures:
        raise CertificateError('harmonic_order', f"paires {list(bundle.harmonic_failures)}")


def bundle_to_dict(bundle: CertificateBundle, digits: int = 20) -> dict:
    """Forme JSON du paquet : rationnels exacts en "num/den", minorants de ln en décimal"""
    trace = bundle.trace
    return {
        'label': bundle.label,
        'n': bundle.graph.n,
        'm': bundle.graph.edge_count,
        'gamma_f': format_rational(bundle.solution.value),
        'gamma_f_approx': approx(bundle.solution.value),
        'lp': solution_to_dict(bundle.solution),
        'greedy': {
            'gamma_g': trace.m,
            'steps': [{'step': k, 'vertex': x, 'f_set': sorted(f_set)}
                      for k, (x, f_set) in enumerate(zip(trace.sequence, trace.f_sets), 1)],
            'weights': [format_rational(w) for w in trace.weights],
        },
        'packing': {
            'weights': [format_rational(w) for w in bundle.packing.weights],
            'total': format_rational(bundle.packing.total),
            'slacks': [format_rational(s) for s in bundle.packing_report.slacks],
            'min_slack': format_rational(bundle.packing_report.min_slack),
        },
        'audit': {
            'sums': [format_rational(s) for s in bundle.audit.sums],
            'bounds_lower': [str(to_decimal(b, digits, ROUND_FLOOR)) for b in bundle.audit.bounds_lo],
            'max_sum': format_rational(bundle.audit.max_sum),
            'argmax': bundle.audit.argmax,
        },
    }


def write_bundle(bundle: CertificateBundle, output_file) -> Path:
    output_file = Path(output_file)
    output_file.parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, 'w', encoding='utf-8') as f:
        json.dump(bundle_to_dict(bundle), f, indent=2, ensure_ascii=False)
        f.write("\n")
    return output_file

