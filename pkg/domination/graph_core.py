"""
Représentation des graphes, lecture/écriture des listes d'arêtes,
voisinages fermés et vérification des pondérations (domination / packing)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GraphError, GraphFormatError, VertexIndexError, WeightingError


@dataclass(frozen=True)
class Graph:
    """
    Graphe simple non orienté, sommets 0..n-1

    Le stockage principal est un masque de bits par sommet représentant
    le voisinage fermé N[v] (le bit v est toujours présent). L'ordre des
    indices est l'ordre utilisé par l'algorithme glouton.
    """

    n: int
    closed_masks: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """
        Construit un graphe à partir d'une liste d'arêtes

        Args:
            n: Nombre de sommets (au moins 1)
            edges: Paires (u, v) avec u != v, sans doublon

        Returns:
            Graph: le graphe construit
        """
        if n < 1:
            raise GraphError(f"Le graphe doit avoir au moins un sommet (n={n})")
        masks = [1 << v for v in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Arête ({u}, {v}) hors de [0, {n})")
            if u == v:
                raise GraphError(f"Boucle sur le sommet {u}")
            if masks[u] >> v & 1:
                raise GraphError(f"Arête dupliquée ({u}, {v})")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    @classmethod
    def from_masks(cls, n: int, closed_masks: Sequence[int]) -> Graph:
        """Construit un graphe à partir des masques N[v], en vérifiant la symétrie"""
        if n < 1:
            raise GraphError(f"Le graphe doit avoir au moins un sommet (n={n})")
        if len(closed_masks) != n:
            raise GraphError(f"{len(closed_masks)} masques pour n={n}")
        full = (1 << n) - 1
        for v, mask in enumerate(closed_masks):
            if not mask >> v & 1:
                raise GraphError(f"N[{v}] ne contient pas {v}")
            if mask & ~full:
                raise GraphError(f"N[{v}] contient un indice >= {n}")
            for u in iter_bits(mask):
                if not closed_masks[u] >> v & 1:
                    raise GraphError(f"Adjacence non symétrique entre {v} et {u}")
        return cls(n, tuple(closed_masks))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Voisinages ouverts N(v)"""
        return tuple(frozenset(iter_bits(mask & ~(1 << v)))
                     for v, mask in enumerate(self.closed_masks))

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, nbrs in enumerate(self.adjacency)
                         for v in nbrs if u < v)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() - 1 for mask in self.closed_masks)

    def degree(self, v: int) -> int:
        check_vertex(self, v)
        return self.degrees[v]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def closed_mask(self, v: int) -> int:
        check_vertex(self, v)
        return self.closed_masks[v]


def iter_bits(mask: int):
    """Itère sur les indices des bits à 1, par ordre croissant"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise VertexIndexError(f"Sommet {v} hors de [0, {g.n})")


# ============================================================================
# FORMAT LISTE D'ARÊTES
# ============================================================================

def parse_graph(text: str) -> Graph:
    """
    Lit un document « liste d'arêtes »

    Format : première ligne utile "n m", puis m lignes "u v".
    Les lignes commençant par '#' et les lignes vides sont ignorées.

    Args:
        text: Contenu du document

    Returns:
        Graph: le graphe décrit

    Raises:
        GraphFormatError: avec le numéro de la ligne fautive
    """
    header = None
    n = m = 0
    masks: list[int] = []
    seen = 0
    last_line = 0

    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        last_line = line_number
        if not line or line.startswith('#'):
            continue

        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(line_number, f"deux entiers attendus, reçu '{line}'")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(line_number, f"entiers attendus, reçu '{line}'") from None

        if header is None:
            header = line_number
            n, m = a, b
            if n < 1:
                raise GraphFormatError(line_number, f"le graphe doit avoir au moins un sommet (n={n})")
            if m < 0:
                raise GraphFormatError(line_number, f"nombre d'arêtes négatif (m={m})")
            masks = [1 << v for v in range(n)]
            continue

        u, v = a, b
        seen += 1
        if seen > m:
            raise GraphFormatError(line_number, f"plus de {m} arêtes alors que l'en-tête annonce m={m}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(line_number, f"indice hors de [0, {n}) dans '{line}'")
        if u == v:
            raise GraphFormatError(line_number, f"boucle sur le sommet {u}")
        if masks[u] >> v & 1:
            raise GraphFormatError(line_number, f"arête dupliquée ({u}, {v})")
        masks[u] |= 1 << v
        masks[v] |= 1 << u

    if header is None:
        raise GraphFormatError(max(last_line, 1), "en-tête 'n m' manquant")
    if seen != m:
        raise GraphFormatError(max(last_line, 1), f"{seen} arêtes lues alors que l'en-tête annonce m={m}")
    return Graph(n, tuple(masks))


def format_graph(g: Graph) -> str:
    """Écrit le graphe au format liste d'arêtes (arêtes triées, sortie déterministe)"""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding='utf-8'))


def write_graph(g: Graph, path) -> Path:
    path = Path(path)
    path.write_text(format_graph(g), encoding='utf-8')
    return path


# ============================================================================
# VOISINAGES ET DOMINATION
# ============================================================================

def closed_neighborhood(g: Graph, vs: Iterable[int]) -> frozenset[int]:
    """
    Voisinage fermé d'une suite de sommets (union des N[v])

    Args:
        g: Le graphe
        vs: Suite de sommets

    Returns:
        frozenset: union des voisinages fermés
    """
    mask = 0
    for v in vs:
        mask |= g.closed_mask(v)
    return frozenset(iter_bits(mask))


def degree_stats(g: Graph) -> tuple[int, int]:
    """Retourne (δ(G), Δ(G))"""
    if g.n < 1:
        raise GraphError("Graphe vide")
    return min(g.degrees), max(g.degrees)


def is_regular(g: Graph) -> int | None:
    """Degré commun si le graphe est régulier, None sinon"""
    low, high = degree_stats(g)
    return low if low == high else None


def is_dominating(g: Graph, s: Iterable[int]) -> bool:
    """Vrai si tout sommet est dans S ou adjacent à un sommet de S"""
    mask = 0
    for v in s:
        mask |= g.closed_mask(v)
    return mask == g.full_mask


# ============================================================================
# PONDÉRATIONS
# ============================================================================

class Role(str, Enum):
    DOMINATION = "domination"
    PACKING = "packing"


@dataclass(frozen=True)
class VertexWeighting:
    """Poids rationnels exacts dans [0,1], un par sommet"""

    weights: tuple[Fraction, ...]
    role: Role

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        for v, w in enumerate(weights):
            if not 0 <= w <= 1:
                raise WeightingError(f"Poids {w} du sommet {v} hors de [0,1]")
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'role', Role(self.role))

    def __len__(self):
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def support(self) -> frozenset[int]:
        return frozenset(v for v, w in enumerate(self.weights) if w)


@dataclass(frozen=True)
class WeightingReport:
    """
    Résultat de check_weighting

    La marge (slack) vaut somme - 1 pour une domination et 1 - somme pour
    un packing : elle est positive ou nulle exactement là où la contrainte
    est respectée.
    """

    role: Role
    sums: tuple[Fraction, ...]
    slacks: tuple[Fraction, ...]
    violated: tuple[int, ...]

    @property
    def feasible(self) -> bool:
        return not self.violated

    @property
    def min_slack(self) -> Fraction:
        return min(self.slacks)

    @property
    def max_slack(self) -> Fraction:
        return max(self.slacks)


def check_weighting(g: Graph, w: VertexWeighting) -> WeightingReport:
    """
    Vérifie une pondération en arithmétique rationnelle exacte

    Args:
        g: Le graphe
        w: La pondération (domination: sommes >= 1, packing: sommes <= 1)

    Returns:
        WeightingReport: sommes, marges et sommets violés
    """
    if len(w) != g.n:
        raise WeightingError(f"Pondération de longueur {len(w)} pour n={g.n}")

    sums = []
    for v in range(g.n):
        total = w.weights[v]
        for u in g.adjacency[v]:
            total += w.weights[u]
        sums.append(total)

    if w.role is Role.DOMINATION:
        slacks = tuple(s - 1 for s in sums)
    else:
        slacks = tuple(1 - s for s in sums)
    violated = tuple(v for v, slack in enumerate(slacks) if slack < 0)
    return WeightingReport(w.role, tuple(sums), slacks, violated)
