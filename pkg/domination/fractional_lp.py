"""
Nombre de domination fractionnaire γ_f(G) par simplexe en rationnels exacts

Le programme de domination min Σf, N·f >= 1, f >= 0 et son dual, le
packing max Σg, N·g <= 1, g >= 0, ont la même matrice (N est symétrique).
Le simplexe travaille sur le packing, dont la base des variables d'écart
est réalisable : pas de phase 1. La domination optimale se lit sur les
coûts réduits des variables d'écart du tableau final.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .config import get_settings
from .errors import BudgetExceededError, CertificateError
from .graph_core import Graph, Role, VertexWeighting, check_weighting, iter_bits

logger = logging.getLogger(__name__)

# Pivots dégénérés consécutifs avant de passer à la règle de Bland
DEGENERATE_STREAK = 50


class Sense(str, Enum):
    MIN_DOMINATION = "min-domination"
    MAX_PACKING = "max-packing"


@dataclass(frozen=True)
class LPInstance:
    """Matrice d'incidence des voisinages fermés, stockée par lignes (supports)"""

    n: int
    rows: tuple[frozenset[int], ...]
    sense: Sense = Sense.MIN_DOMINATION

    def dual(self) -> LPInstance:
        other = Sense.MAX_PACKING if self.sense is Sense.MIN_DOMINATION else Sense.MIN_DOMINATION
        return LPInstance(self.n, self.rows, other)

    def matrix(self) -> list[list[int]]:
        """Forme dense N (n×n, 0/1), pour l'affichage et les tests"""
        return [[1 if u in row else 0 for u in range(self.n)] for row in self.rows]


def build_lp(g: Graph, sense: Sense = Sense.MIN_DOMINATION) -> LPInstance:
    """
    Programme linéaire de la domination fractionnaire de g

    Les bornes f <= 1 sont omises : elles sont redondantes, et l'extraction
    de la solution plafonne puis re-vérifie.
    """
    rows = tuple(frozenset(iter_bits(mask)) for mask in g.closed_masks)
    return LPInstance(g.n, rows, Sense(sense))


@dataclass(frozen=True)
class FractionalSolution:
    value: Fraction
    primal: VertexWeighting
    dual: VertexWeighting
    duality_gap: Fraction
    pivots: int = 0


# ============================================================================
# SIMPLEXE (TABLEAU ENTIER, PIVOTS SANS FRACTION)
# ============================================================================

class _PackingSimplex:
    """
    Simplexe primal sur max Σy, N·y <= 1, y >= 0

    Variables 0..n-1 : y ; variables n..2n-1 : écarts s_v.
    Tableau compact entier : une ligne par contrainte plus la ligne de
    l'objectif, une colonne par variable hors base plus le second membre.
    Le tableau rationnel courant est tableau / denom, où denom est le
    déterminant (positif) de la base ; chaque pivot fait une division
    entière exacte par l'ancien denom, sans calcul de pgcd.

    Variable entrante : plus grand coût réduit (plus petit indice en cas
    d'égalité) ; après DEGENERATE_STREAK pivots dégénérés consécutifs,
    règle de Bland jusqu'au prochain pivot non dégénéré, ce qui exclut le
    cyclage. Variable sortante : rapport minimal, plus petit indice de
    variable de base en cas d'égalité.
    """

    def __init__(self, lp: LPInstance, pivot_cap: int | None = None):
        n = lp.n
        self.n = n
        # Colonne j < n : variable hors base col_var[j] ; colonne n : second membre
        self.tableau = [[1 if u in row else 0 for u in range(n)] + [1] for row in lp.rows]
        self.tableau.append([-1] * n + [0])
        self.row_var = [n + v for v in range(n)]
        self.col_var = list(range(n))
        self.denom = 1
        self.pivots = 0
        self.pivot_cap = pivot_cap
        self.degenerate_run = 0

    @property
    def value(self) -> Fraction:
        return Fraction(self.tableau[-1][-1], self.denom)

    def entering(self) -> int | None:
        objective = self.tableau[-1]
        negative = [(objective[j], self.col_var[j], j) for j in range(self.n) if objective[j] < 0]
        if not negative:
            return None
        if self.degenerate_run >= DEGENERATE_STREAK:
            return min(negative, key=lambda t: t[1])[2]
        return min(negative, key=lambda t: (t[0], t[1]))[2]

    def leaving(self, e: int) -> int:
        best_r = -1
        for r, row in enumerate(self.tableau[:-1]):
            a = row[e]
            if a <= 0:
                continue
            if best_r < 0:
                best_r = r
                continue
            best = self.tableau[best_r]
            # row[-1]/a comparé à best[-1]/best[e], dénominateurs positifs
            lhs, rhs = row[-1] * best[e], best[-1] * a
            if lhs < rhs or (lhs == rhs and self.row_var[r] < self.row_var[best_r]):
                best_r = r
        if best_r < 0:
            # Impossible : le packing est borné par n
            raise CertificateError('bounded_packing', f"variable {self.col_var[e]} non bornée")
        return best_r

    def pivot(self, r: int, e: int):
        pivot_row = self.tableau[r]
        p, d = pivot_row[e], self.denom
        for i, row in enumerate(self.tableau):
            if i == r:
                continue
            factor = row[e]
            if factor:
                self.tableau[i] = [(p * x - factor * y) // d for x, y in zip(row, pivot_row)]
                self.tableau[i][e] = -factor
            else:
                self.tableau[i] = [p * x // d for x in row]
        pivot_row[e] = d
        self.denom = p
        self.row_var[r], self.col_var[e] = self.col_var[e], self.row_var[r]

        self.pivots += 1
        self.degenerate_run = self.degenerate_run + 1 if pivot_row[-1] == 0 else 0

    def run(self):
        while (e := self.entering()) is not None:
            if self.pivot_cap is not None and self.pivots >= self.pivot_cap:
                raise BudgetExceededError('lp_pivots', f"plus de {self.pivot_cap} pivots")
            self.pivot(self.leaving(e), e)

    def packing(self) -> list[Fraction]:
        y = [Fraction(0)] * self.n
        for row, var in zip(self.tableau, self.row_var):
            if var < self.n:
                y[var] = Fraction(row[-1], self.denom)
        return y

    def domination(self) -> list[Fraction]:
        """f_v = -(coût réduit de s_v), nul si s_v est en base"""
        f = [Fraction(0)] * self.n
        objective = self.tableau[-1]
        for j, var in enumerate(self.col_var):
            if var >= self.n:
                f[var - self.n] = Fraction(objective[j], self.denom)
        return f

def solve_gamma_f(g: Graph, vertex_cap: int | None = None,
                  pivot_cap: int | None = None) -> FractionalSolution:
    """
    γ_f(G) exact, avec une domination et un packing optimaux

    Args:
        g: Le graphe
        vertex_cap: Plafond sur n (DOMINATION_LP_VERTEX_CAP par défaut)
        pivot_cap: Nombre maximal de pivots (illimité par défaut)

    Returns:
        FractionalSolution: valeur, témoins primal et dual, écart de dualité nul

    Raises:
        BudgetExceededError: n au-delà du plafond
        CertificateError: un témoin extrait n'est pas réalisable
    """
    cap = get_settings().lp_vertex_cap if vertex_cap is None else vertex_cap
    if g.n > cap:
        raise BudgetExceededError('lp_vertex_cap', f"n={g.n} > {cap}")

    simplex = _PackingSimplex(build_lp(g, Sense.MAX_PACKING), pivot_cap)
    simplex.run()
    logger.info("Simplexe : γ_f=%s en %d pivots (n=%d)", simplex.value, simplex.pivots, g.n)

    # Plafonnement à 1 : sans effet sur une solution optimale
    primal = VertexWeighting(tuple(min(f, Fraction(1)) for f in simplex.domination()), Role.DOMINATION)
    dual = VertexWeighting(tuple(simplex.packing()), Role.PACKING)

    for name, witness in (('primal', primal), ('dual', dual)):
        report = check_weighting(g, witness)
        if not report.feasible:
            raise CertificateError(f"{name}_feasibility",
                                   f"témoin {name} non réalisable aux sommets {list(report.violated)}")

    return FractionalSolution(simplex.value, primal, dual, primal.total - dual.total, simplex.pivots)


# ============================================================================
# CERTIFICAT DE DUALITÉ FORTE
# ============================================================================

@dataclass(frozen=True)
class DualityVerdict:
    """Résultat de verify_strong_duality : vrai si aucune contrainte n'est violée"""

    primal_total: Fraction
    dual_total: Fraction
    violations: tuple[str, ...]

    def __bool__(self):
        return not self.violations


def verify_strong_duality(sol: FractionalSolution, g: Graph) -> DualityVerdict:
    """
    Re-vérifie une solution sans passer par le solveur ni par check_weighting

    Contrôle la réalisabilité du primal (Σ_{N[v]} f >= 1), celle du dual
    (Σ_{N[v]} g <= 1), la positivité des poids et l'égalité exacte des totaux.
    """
    f, p = sol.primal.weights, sol.dual.weights
    violations = []
    if len(f) != g.n or len(p) != g.n:
        return DualityVerdict(Fraction(0), Fraction(0),
                              (f"longueurs {len(f)}/{len(p)} pour n={g.n}",))

    for v in range(g.n):
        if f[v] < 0:
            violations.append(f"primal : poids négatif au sommet {v}")
        if p[v] < 0:
            violations.append(f"dual : poids négatif au sommet {v}")
        cover = f[v]
        load = p[v]
        for u in g.adjacency[v]:
            cover += f[u]
            load += p[u]
        if cover < 1:
            violations.append(f"primal : Σ f(N[{v}]) = {cover} < 1")
        if load > 1:
            violations.append(f"dual : Σ g(N[{v}]) = {load} > 1")

    primal_total = sum(f, Fraction(0))
    dual_total = sum(p, Fraction(0))
    if primal_total != dual_total:
        violations.append(f"totaux différents : {primal_total} != {dual_total}")
    if sol.value != primal_total:
        violations.append(f"valeur annoncée {sol.value} != total primal {primal_total}")
    return DualityVerdict(primal_total, dual_total, tuple(violations))


# ============================================================================
# SÉRIALISATION
# ============================================================================

def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Relit "num/den" (ou un entier) en rationnel exact"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Rationnel invalide : '{text}'") from None


def solution_to_dict(sol: FractionalSolution) -> dict:
    return {
        'value': format_rational(sol.value),
        'primal': [format_rational(w) for w in sol.primal.weights],
        'dual': [format_rational(w) for w in sol.dual.weights],
        'duality_gap': format_rational(sol.duality_gap),
        'pivots': sol.pivots,
    }
