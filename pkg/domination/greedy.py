"""
Suite dominante gloutonne, γ_g et certificats associés :
ensembles F, poids w(v) = 1/|F(v)| et packing fractionnaire normalisé
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .bounds import ln_interval
from .config import get_settings
from .errors import TraceMismatchError
from .graph_core import Graph, Role, VertexWeighting, degree_stats, iter_bits, mask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GreedyTrace:
    """
    Déroulé de l'algorithme glouton

    Les étapes sont indexées à partir de 0 : ``first_dominator[v] = k``
    signifie que v est dominé pour la première fois par ``sequence[k]``.
    """

    sequence: tuple[int, ...]
    f_sets: tuple[frozenset[int], ...]
    first_dominator: tuple[int, ...]
    weights: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.sequence)

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))


def _trace_from_steps(n: int, sequence, f_sets) -> GreedyTrace:
    first_dominator = [-1] * n
    weights = [Fraction(0)] * n
    for k, f_set in enumerate(f_sets):
        for v in f_set:
            first_dominator[v] = k
            weights[v] = Fraction(1, len(f_set))
    return GreedyTrace(tuple(sequence), tuple(f_sets), tuple(first_dominator), tuple(weights))


def greedy_sequence(g: Graph) -> GreedyTrace:
    """
    Suite dominante gloutonne

    À chaque étape on choisit le sommet qui domine le plus de sommets
    encore non dominés ; les égalités vont au plus petit indice.

    Args:
        g: Le graphe

    Returns:
        GreedyTrace: suite, ensembles F et poids w
    """
    masks = g.closed_masks
    dominated = 0
    sequence = []
    f_sets = []
    while dominated != g.full_mask:
        undominated = ~dominated
        best, best_gain = -1, 0
        for v in range(g.n):
            gain = (masks[v] & undominated).bit_count()
            if gain > best_gain:
                best, best_gain = v, gain
        new = masks[best] & undominated
        sequence.append(best)
        f_sets.append(frozenset(iter_bits(new)))
        dominated |= new
    logger.debug("Glouton : %d étapes pour n=%d", len(sequence), g.n)
    return _trace_from_steps(g.n, sequence, f_sets)


def gamma_g(g: Graph) -> int:
    """Nombre de domination glouton γ_g(G)"""
    return greedy_sequence(g).m


def check_trace(g: Graph, trace: GreedyTrace) -> None:
    """Vérifie que la trace a bien été produite sur ce graphe"""
    if len(trace.first_dominator) != g.n or len(trace.weights) != g.n:
        raise TraceMismatchError(f"Trace sur {len(trace.weights)} sommets pour n={g.n}")
    if len(trace.sequence) != len(trace.f_sets):
        raise TraceMismatchError(f"{len(trace.sequence)} étapes pour {len(trace.f_sets)} ensembles F")
    dominated = 0
    for k, (x, f_set) in enumerate(zip(trace.sequence, trace.f_sets)):
        if not 0 <= x < g.n:
            raise TraceMismatchError(f"Étape {k + 1} : sommet {x} hors du graphe")
        expected = g.closed_masks[x] & ~dominated
        if mask_of(f_set) != expected or not f_set:
            raise TraceMismatchError(f"Étape {k + 1} : F ne correspond pas à N[{x}]")
        weight = Fraction(1, len(f_set))
        for v in f_set:
            if trace.first_dominator[v] != k:
                raise TraceMismatchError(f"Sommet {v} : premier dominant {trace.first_dominator[v]} au lieu de {k}")
            if trace.weights[v] != weight:
                raise TraceMismatchError(f"Sommet {v} : poids {trace.weights[v]} au lieu de {weight}")
        dominated |= expected
    if dominated != g.full_mask:
        raise TraceMismatchError("La trace ne domine pas tout le graphe")


def certificate_scale(g: Graph, digits: int | None = None) -> Fraction:
    """Facteur 1/U, où U est un majorant rationnel de 1 + ln(1+Δ)"""
    _, high = degree_stats(g)
    _, hi = ln_interval(1 + high, digits or get_settings().ln_digits)
    return 1 / (1 + hi)


def packing_certificate(g: Graph, trace: GreedyTrace, digits: int | None = None) -> VertexWeighting:
    """
    Packing fractionnaire w(v)/U tiré de la trace gloutonne

    U majore 1 + ln(1+Δ) ; les poids restent donc rationnels exacts et la
    faisabilité se vérifie sans arrondi. Le total γ_g/U minore γ_f.

    Args:
        g: Le graphe
        trace: Trace produite par greedy_sequence sur g

    Returns:
        VertexWeighting: pondération de rôle packing
    """
    check_trace(g, trace)
    scale = certificate_scale(g, digits)
    return VertexWeighting(tuple(w * scale for w in trace.weights), Role.PACKING)


@dataclass(frozen=True)
class NeighborhoodAudit:
    """Sommes Σ_{u∈N[v]} w(u) comparées à 1 + ln(1+deg v)"""

    sums: tuple[Fraction, ...]
    bounds_lo: tuple[Fraction, ...]
    violated: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violated

    @property
    def max_sum(self) -> Fraction:
        return max(self.sums)

    @property
    def argmax(self) -> int:
        return self.sums.index(self.max_sum)


def neighborhood_weight_bound_check(g: Graph, trace: GreedyTrace,
                                    digits: int | None = None) -> NeighborhoodAudit:
    """
    Vérifie Σ_{u∈N[v]} w(u) <= 1 + ln(1+deg v) pour chaque sommet

    La somme est exacte ; elle est comparée au minorant rationnel de
    1 + ln p, ce qui rend un verdict positif toujours sûr.
    """
    check_trace(g, trace)
    digits = digits or get_settings().ln_digits
    cache = {}
    sums, bounds, violated = [], [], []
    for v in range(g.n):
        total = trace.weights[v] + sum((trace.weights[u] for u in g.adjacency[v]), Fraction(0))
        p = 1 + g.degrees[v]
        if p not in cache:
            cache[p] = 1 + ln_interval(p, digits)[0]
        sums.append(total)
        bounds.append(cache[p])
        if total > cache[p]:
            violated.append(v)
    return NeighborhoodAudit(tuple(sums), tuple(bounds), tuple(violated))


def harmonic_order_check(g: Graph, trace: GreedyTrace) -> tuple[tuple[int, int], ...]:
    """
    Vérifie w(u_i) <= 1/(p+1-i) pour chaque N[v] listé dans l'ordre de première domination

    Returns:
        tuple: les paires (v, u_i) en défaut (vide si tout va bien)
    """
    check_trace(g, trace)
    failures = []
    for v in range(g.n):
        members = sorted(iter_bits(g.closed_masks[v]), key=lambda u: (trace.first_dominator[u], u))
        p = len(members)
        for i, u in enumerate(members, 1):
            if trace.weights[u] > Fraction(1, p + 1 - i):
                failures.append((v, u))
    return tuple(failures)


# ============================================================================
# SÉRIALISATION DES TRACES
# ============================================================================

def format_trace(trace: GreedyTrace) -> str:
    """Une ligne par étape : "étape<TAB>sommet<TAB>F trié, séparé par des virgules" (étapes à partir de 1)"""
    lines = [f"{k}\t{x}\t{','.join(map(str, sorted(f_set)))}"
             for k, (x, f_set) in enumerate(zip(trace.sequence, trace.f_sets), 1)]
    return "\n".join(lines) + "\n"


def parse_trace(text: str, n: int) -> GreedyTrace:
    """Relit une trace écrite par format_trace"""
    sequence, f_sets = [], []
    for line_number, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            step, vertex, members = line.split('\t')
            step, vertex = int(step), int(vertex)
            f_set = frozenset(int(u) for u in members.split(','))
        except ValueError:
            raise TraceMismatchError(f"Ligne {line_number} de trace illisible : '{line}'") from None
        if step != len(sequence) + 1:
            raise TraceMismatchError(f"Ligne {line_number} : étape {step} inattendue")
        if not all(0 <= u < n for u in f_set | {vertex}):
            raise TraceMismatchError(f"Ligne {line_number} : sommet hors de [0, {n})")
        sequence.append(vertex)
        f_sets.append(f_set)
    trace = _trace_from_steps(n, sequence, f_sets)
    if -1 in trace.first_dominator:
        raise TraceMismatchError("La trace ne couvre pas tous les sommets")
    return trace
