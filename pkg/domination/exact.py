"""
Nombre de domination exact γ(G) : recherche exhaustive (oracle)
et séparation-évaluation (branch and bound)
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from enum import Enum

from .config import Settings, get_settings
from .errors import BudgetExceededError, CertificateError
from .graph_core import Graph, is_dominating, iter_bits
from .greedy import greedy_sequence

logger = logging.getLogger(__name__)

# Vérification de l'horloge tous les N nœuds
_CLOCK_EVERY = 1024


class Method(str, Enum):
    EXHAUSTIVE = "exhaustive"
    BRANCH_AND_BOUND = "branch_and_bound"


@dataclass(frozen=True)
class DominationResult:
    value: int
    witness: tuple[int, ...]
    method: Method
    proven_optimal: bool
    nodes_explored: int = 0


def verify_result(g: Graph, result: DominationResult) -> DominationResult:
    """Re-vérifie le témoin après résolution ; lève CertificateError en cas d'échec"""
    if len(set(result.witness)) != result.value:
        raise CertificateError('witness_size', f"|témoin| = {len(set(result.witness))} != {result.value}")
    if not is_dominating(g, result.witness):
        raise CertificateError('witness_dominates', f"le témoin {list(result.witness)} ne domine pas")
    return result


def format_result(result: DominationResult) -> str:
    witness = ",".join(map(str, sorted(result.witness)))
    optimal = "true" if result.proven_optimal else "false"
    return f"gamma={result.value} witness=[{witness}] method={result.method.value} optimal={optimal}"


# ============================================================================
# RECHERCHE EXHAUSTIVE
# ============================================================================

def brute_force_gamma(g: Graph, size_cap: int | None = None,
                      vertex_cap: int | None = None) -> DominationResult:
    """
    Teste tous les k-sous-ensembles pour k = 1, 2, ...

    Les sous-ensembles sont énumérés dans l'ordre lexicographique : le
    premier ensemble dominant trouvé est le plus petit témoin dans cet ordre.

    Args:
        g: Le graphe
        size_cap: Taille maximale essayée (sinon n, avec n <= vertex_cap)
        vertex_cap: Plafond de n sans size_cap (30 par défaut)

    Returns:
        DominationResult: valeur prouvée optimale

    Raises:
        BudgetExceededError: plafond dépassé, ou aucun ensemble dominant de taille <= size_cap
    """
    vertex_cap = get_settings().brute_force_vertex_cap if vertex_cap is None else vertex_cap
    if size_cap is None and g.n > vertex_cap:
        raise BudgetExceededError('brute_force_vertex_cap', f"n={g.n} > {vertex_cap} sans size_cap")
    limit = g.n if size_cap is None else min(size_cap, g.n)

    masks = g.closed_masks
    full = g.full_mask
    n = g.n
    nodes = 0

    for k in range(1, limit + 1):
        # Parcours en profondeur avec les unions de préfixes
        chosen = [0] * k
        prefix = [0] * (k + 1)
        depth, start = 0, 0
        while depth >= 0:
            if start > n - (k - depth):
                depth -= 1
                if depth >= 0:
                    start = chosen[depth] + 1
                continue
            v = start
            chosen[depth] = v
            prefix[depth + 1] = prefix[depth] | masks[v]
            if depth == k - 1:
                nodes += 1
                if prefix[k] == full:
                    result = DominationResult(k, tuple(chosen), Method.EXHAUSTIVE, True, nodes)
                    return verify_result(g, result)
                start = v + 1
            else:
                depth += 1
                start = v + 1
        logger.debug("Aucun ensemble dominant de taille %d (%d sous-ensembles)", k, nodes)

    raise BudgetExceededError('size_cap', f"aucun ensemble dominant de taille <= {limit}")


# ============================================================================
# SÉPARATION-ÉVALUATION
# ============================================================================

class _Search:
    """État d'une résolution branch and bound"""

    def __init__(self, g: Graph, time_limit: float | None):
        self.g = g
        self.masks = g.closed_masks
        self.full = g.full_mask
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.time_limit = time_limit
        self.nodes = 0
        # Sommets par nombre croissant de dominateurs |N[u]|
        self.fail_first = sorted(range(g.n), key=lambda u: (g.degrees[u], u))
        self.best_value = g.n + 1
        self.best_witness: tuple[int, ...] = ()

    def lower_bound(self, undominated: int) -> int:
        """
        Minorant du nombre de sommets encore nécessaires

        Maximum de deux arguments de comptage : le plus petit k tel que les
        k meilleures couvertures résiduelles atteignent |non dominés|, et un
        ensemble de sommets non dominés aux voisinages fermés disjoints.
        """
        remaining = undominated.bit_count()
        if not remaining:
            return 0
        gains = sorted(((m & undominated).bit_count() for m in self.masks), reverse=True)
        covered, by_count = 0, 0
        for gain in gains:
            if covered >= remaining or gain == 0:
                break
            covered += gain
            by_count += 1

        union, by_packing = 0, 0
        for u in self.fail_first:
            if undominated >> u & 1 and not self.masks[u] & union:
                union |= self.masks[u]
                by_packing += 1
        return max(by_count, by_packing)

    def tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_EVERY == 0 \
                and time.monotonic() > self.deadline:
            raise BudgetExceededError('bnb_time_limit', f"résolution interrompue après {self.time_limit}s "
                                      f"({self.nodes} nœuds)")

    def branch(self, chosen: list[int], dominated: int):
        self.tick()
        undominated = self.full & ~dominated
        if not undominated:
            if len(chosen) < self.best_value:
                self.best_value = len(chosen)
                self.best_witness = tuple(sorted(chosen))
            return
        if len(chosen) + self.lower_bound(undominated) >= self.best_value:
            return

        # Sommet non dominé ayant le moins de dominateurs possibles
        pivot = next(u for u in self.fail_first if undominated >> u & 1)
        candidates = []
        for c in iter_bits(self.masks[pivot]):
            gain = self.masks[c] & undominated
            candidates.append((-gain.bit_count(), c, gain))
        candidates.sort()

        # Un candidat dont la couverture est incluse dans celle d'un
        # candidat déjà retenu est inutile.
        kept = []
        for _, c, gain in candidates:
            if any(gain & ~other == 0 for _, other in kept):
                continue
            kept.append((c, gain))

        for c, gain in kept:
            chosen.append(c)
            self.branch(chosen, dominated | gain)
            chosen.pop()
            if len(chosen) + 1 >= self.best_value:
                break


def branch_bound_gamma(g: Graph, upper_hint: int | None = None,
                       time_limit: float | None = None) -> DominationResult:
    """
    γ(G) exact par séparation-évaluation

    Branche sur le sommet non dominé ayant le moins de dominateurs, en
    essayant ses dominateurs par couverture décroissante. Borne initiale :
    la solution gloutonne (et upper_hint s'il est plus petit).

    Args:
        g: Le graphe
        upper_hint: Majorant supposé de γ ; s'il est faux, la recherche reprend avec γ_g
        time_limit: Limite en secondes (None : pas de limite)

    Returns:
        DominationResult: valeur prouvée optimale
    """
    trace = greedy_sequence(g)
    search = _Search(g, time_limit)

    if upper_hint is not None and upper_hint < trace.m:
        # On cherche un ensemble de taille <= upper_hint
        search.best_value = upper_hint + 1
        search.branch([], 0)
    if not search.best_witness:
        search.best_value = trace.m
        search.best_witness = tuple(sorted(trace.sequence))
        search.branch([], 0)

    logger.info("Branch and bound : γ=%d, %d nœuds (n=%d)", search.best_value, search.nodes, g.n)
    result = DominationResult(search.best_value, search.best_witness, Method.BRANCH_AND_BOUND,
                              True, search.nodes)
    return verify_result(g, result)


def solve_gamma(g: Graph, method: str = "auto", size_cap: int | None = None,
                time_limit: float | None = None, force: bool = False,
                settings: Settings | None = None) -> DominationResult:
    """
    Choisit la méthode : exhaustive si n <= 14 ou size_cap donné, branch and bound sinon

    Args:
        g: Le graphe
        method: "auto", "exhaustive" ou "branch_and_bound"
        size_cap: Taille maximale essayée par la recherche exhaustive
        time_limit: Limite du branch and bound (DOMINATION_BNB_TIME_LIMIT par défaut)
        force: Ignorer les plafonds sur n
        settings: Réglages (get_settings() par défaut)

    Returns:
        DominationResult: valeur prouvée optimale
    """
    settings = settings or get_settings()
    if method == "auto":
        method = Method.EXHAUSTIVE if g.n <= 14 or size_cap is not None else Method.BRANCH_AND_BOUND
    if Method(method) is Method.EXHAUSTIVE:
        vertex_cap = g.n if force else settings.brute_force_vertex_cap
        return brute_force_gamma(g, size_cap=size_cap, vertex_cap=vertex_cap)

    if g.n > settings.bnb_vertex_cap and not force:
        raise BudgetExceededError('bnb_vertex_cap', f"n={g.n} > {settings.bnb_vertex_cap} (utiliser --force)")
    if time_limit is None:
        time_limit = settings.bnb_time_limit
    return branch_bound_gamma(g, time_limit=time_limit or None)
