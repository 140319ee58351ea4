"""
Constructeurs déterministes des familles de graphes étudiées
(complément d'un couplage parfait, puissance forte J_t, chaîne de cliques H_t,
clique « chevelue ») et graphes aléatoires G(n, p) reproductibles
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .config import get_settings
from .errors import ConstructionError
from .graph_core import Graph, mask_of


class Family(str, Enum):
    MATCHING_COMPLEMENT = "matching_complement"
    TORUS_J = "torus_J"
    CLIQUE_CHAIN_H = "clique_chain_H"
    HAIRY_CLIQUE = "hairy_clique"
    RANDOM = "random"


# Paramètre minimal de chaque famille
MIN_PARAM = {
    Family.MATCHING_COMPLEMENT: 1,
    Family.TORUS_J: 1,
    Family.CLIQUE_CHAIN_H: 4,
    Family.HAIRY_CLIQUE: 1,
    Family.RANDOM: 1,
}


@dataclass(frozen=True)
class ConstructionSpec:
    """Description d'un graphe à construire (famille + paramètre)"""

    family: Family
    param: int
    seed: int = 0
    probability: Fraction = Fraction(1, 2)

    def __post_init__(self):
        try:
            object.__setattr__(self, 'family', Family(self.family))
        except ValueError:
            raise ConstructionError(f"Famille inconnue : {self.family}") from None
        object.__setattr__(self, 'probability', Fraction(self.probability))

    def validate(self) -> None:
        minimum = MIN_PARAM[self.family]
        if self.param < minimum:
            raise ConstructionError(
                f"{self.family.value} exige un paramètre >= {minimum} (reçu {self.param})")
        if self.family is Family.RANDOM:
            _check_probability(self.probability)
            _check_seed(self.seed)

    @property
    def label(self) -> str:
        if self.family is Family.RANDOM:
            return f"random_n{self.param}_s{self.seed}"
        return f"{self.family.value}_{self.param}"


def build(spec: ConstructionSpec, torus_vertex_cap: int | None = None) -> Graph:
    """Construit le graphe décrit par ``spec``"""
    spec.validate()
    if spec.family is Family.MATCHING_COMPLEMENT:
        return matching_complement(spec.param)
    if spec.family is Family.TORUS_J:
        return torus_J(spec.param, vertex_cap=torus_vertex_cap)
    if spec.family is Family.CLIQUE_CHAIN_H:
        return clique_chain_H(spec.param)
    if spec.family is Family.HAIRY_CLIQUE:
        return hairy_clique(spec.param)
    return random_graph(spec.param, spec.seed, spec.probability)


# ============================================================================
# K_{2t} PRIVÉ D'UN COUPLAGE PARFAIT ET PUISSANCE FORTE J_t
# ============================================================================

def complement_partner(v: int) -> int:
    """Unique sommet non adjacent à v dans K_{2t} - tK_2 (bit de poids faible inversé)"""
    return v ^ 1


def matching_complement(t: int) -> Graph:
    """
    K_{2t} privé du couplage parfait {2i, 2i+1}

    Args:
        t: Nombre d'arêtes du couplage retiré (t >= 1)

    Returns:
        Graph: graphe (2t-2)-régulier sur 2t sommets
    """
    if t < 1:
        raise ConstructionError(f"matching_complement exige t >= 1 (reçu {t})")
    n = 2 * t
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << complement_partner(v)) for v in range(n)))


def torus_order(t: int) -> int:
    return (2 * t) ** (2 * t - 1)


def torus_encode(t: int, coords: Sequence[int]) -> int:
    """Indice mixte (base 2t) d'un d-uplet, la première coordonnée étant la plus significative"""
    base, d = 2 * t, 2 * t - 1
    if len(coords) != d:
        raise ConstructionError(f"{len(coords)} coordonnées pour d={d}")
    index = 0
    for x in coords:
        if not 0 <= x < base:
            raise ConstructionError(f"Coordonnée {x} hors de [0, {base})")
        index = index * base + x
    return index


def torus_decode(t: int, index: int) -> tuple[int, ...]:
    base, d = 2 * t, 2 * t - 1
    if not 0 <= index < base ** d:
        raise ConstructionError(f"Indice {index} hors de [0, {base ** d})")
    coords = []
    for _ in range(d):
        index, x = divmod(index, base)
        coords.append(x)
    return tuple(reversed(coords))


def torus_J(t: int, vertex_cap: int | None = None) -> Graph:
    """
    Puissance forte d'ordre d = 2t-1 de K_{2t} - tK_2

    Deux d-uplets distincts sont adjacents si chaque paire de coordonnées
    est égale ou adjacente dans le graphe de base. Le masque N[x] d'un
    d-uplet est donc le produit tensoriel des masques N[x_i] de la base.

    Args:
        t: Paramètre (t >= 1)
        vertex_cap: Plafond sur (2t)^(2t-1), 10^5 par défaut

    Returns:
        Graph: graphe régulier de degré (2t-1)^d - 1
    """
    if t < 1:
        raise ConstructionError(f"torus_J exige t >= 1 (reçu {t})")
    cap = get_settings().torus_vertex_cap if vertex_cap is None else vertex_cap
    # Refus sans calculer (2t)^(2t-1) quand son nombre de bits dépasse largement celui du plafond
    if (2 * t - 1) * math.log2(2 * t) > cap.bit_length() + 64:
        raise ConstructionError(f"torus_J({t}) aurait {2 * t}^{2 * t - 1} sommets (plafond {cap})")
    order = torus_order(t)
    if order > cap:
        raise ConstructionError(f"torus_J({t}) aurait {order} sommets (plafond {cap})")

    base = matching_complement(t)
    size = base.n
    masks = list(base.closed_masks)
    block = size
    # Produit tensoriel coordonnée par coordonnée : la nouvelle coordonnée
    # devient la plus significative.
    for _ in range(2 * t - 2):
        expanded = []
        for outer in base.closed_masks:
            for inner in masks:
                mask = 0
                for x in range(size):
                    if outer >> x & 1:
                        mask |= inner << (x * block)
                expanded.append(mask)
        masks = expanded
        block *= size
    return Graph(order, tuple(masks))


def torus_diagonal(t: int) -> tuple[int, ...]:
    """Ensemble dominant A = {(v, v, ..., v)} de taille 2t"""
    d = 2 * t - 1
    return tuple(torus_encode(t, (v,) * d) for v in range(2 * t))


def torus_blocker(t: int, tuples: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """
    Pour d d-uplets x^1..x^d, le d-uplet (x̄^1_1, ..., x̄^d_d) qu'aucun d'eux ne domine

    Args:
        t: Paramètre de J_t
        tuples: Exactement d = 2t-1 d-uplets

    Returns:
        tuple: coordonnées du d-uplet bloquant
    """
    d = 2 * t - 1
    if len(tuples) != d:
        raise ConstructionError(f"{len(tuples)} d-uplets fournis, {d} attendus")
    return tuple(complement_partner(x[i]) for i, x in enumerate(tuples))


def torus_gamma_f(t: int) -> Fraction:
    """Valeur exacte n / (2t-1)^d = ((d+1)/d)^d du nombre de domination fractionnaire de J_t"""
    d = 2 * t - 1
    return Fraction(2 * t, d) ** d


# ============================================================================
# CHAÎNE DE CLIQUES H_t
# ============================================================================

def clique_chain_S(t: int) -> tuple[int, ...]:
    if t < 4:
        raise ConstructionError(f"clique_chain_H exige t >= 4 (reçu {t})")
    return (0, 1, 2, 3)


def clique_chain_cliques(t: int) -> tuple[range, ...]:
    """Plages d'indices des t cliques K_4, K_8, ..., K_{2^{t+1}}, dans cet ordre"""
    clique_chain_S(t)
    ranges = []
    start = 4
    for k in range(t):
        size = 4 << k
        ranges.append(range(start, start + size))
        start += size
    return tuple(ranges)


def clique_chain_H(t: int) -> Graph:
    """
    Graphe H_t : S = {0,1,2,3} puis t cliques de tailles 4, 8, ..., 2^{t+1}

    Dans une clique de taille s, le sommet d'indice local l est relié à
    u_j avec j = floor(4l/s) (quarts contigus). S est indépendant et les
    N[u_j] sont deux à deux disjoints.

    Args:
        t: Nombre de cliques (t >= 4)

    Returns:
        Graph: graphe d'ordre 2^{t+2}
    """
    cliques = clique_chain_cliques(t)
    n = 1 << (t + 2)
    masks = [1 << j for j in range(4)]
    for clique in cliques:
        size = len(clique)
        clique_mask = mask_of(clique)
        for local, v in enumerate(clique):
            j = 4 * local // size
            masks.append(clique_mask | 1 << j)
            masks[j] |= 1 << v
    return Graph(n, tuple(masks))


# ============================================================================
# CLIQUE CHEVELUE
# ============================================================================

def hairy_clique(t: int) -> Graph:
    """K_t (sommets 0..t-1) plus un sommet pendant t+i attaché à chaque sommet i"""
    if t < 1:
        raise ConstructionError(f"hairy_clique exige t >= 1 (reçu {t})")
    clique = (1 << t) - 1
    masks = [clique | 1 << (t + i) for i in range(t)]
    masks.extend(1 << (t + i) | 1 << i for i in range(t))
    return Graph(2 * t, tuple(masks))


# ============================================================================
# GRAPHES ALÉATOIRES
# ============================================================================

def _check_probability(p: Fraction) -> None:
    if not 0 < p < 1:
        raise ConstructionError(f"Probabilité {p} hors de ]0, 1[")


def _check_seed(seed: int) -> None:
    if not 0 <= seed < 1 << 64:
        raise ConstructionError(f"Graine {seed} hors de [0, 2^64)")


def stream_seed(seed: int, p: Fraction) -> int:
    """Graine 64 bits du flux : 8 premiers octets de SHA-256("seed:num/den")"""
    digest = hashlib.sha256(f"{seed}:{p.numerator}/{p.denominator}".encode()).digest()
    return int.from_bytes(digest[:8], 'big')


def random_graph(n: int, seed: int, p=Fraction(1, 2)) -> Graph:
    """
    Graphe aléatoire G(n, p) reproductible

    Les paires (i, j), i < j, sont parcourues dans l'ordre lexicographique ;
    un unique flux ``random.Random`` (Mersenne Twister) initialisé par
    ``stream_seed(seed, p)`` fournit un tirage par paire et l'arête est
    gardée si ce tirage est < p.

    Args:
        n: Nombre de sommets (n >= 1)
        seed: Graine 64 bits
        p: Probabilité d'arête, rationnelle dans ]0, 1[

    Returns:
        Graph: le graphe tiré
    """
    p = Fraction(p)
    if n < 1:
        raise ConstructionError(f"random_graph exige n >= 1 (reçu {n})")
    _check_probability(p)
    _check_seed(seed)

    rng = random.Random(stream_seed(seed, p))
    masks = [1 << v for v in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return Graph(n, tuple(masks))
