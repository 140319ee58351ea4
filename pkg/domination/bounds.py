"""
Bornes en forme close et vérification des chaînes d'inégalités :
encadrement n/(1+Δ) <= γ_f <= n/(1+δ), γ_f <= γ <= γ_g,
γ_g <= (1+ln(1+Δ))·γ_f et la borne produit sur γ_g
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from enum import Enum
from fractions import Fraction
from math import comb

from .config import get_settings
from .graph_core import Graph, degree_stats


# ============================================================================
# ARITHMÉTIQUE DIRIGÉE
# ============================================================================

def ln_interval(x: int, digits: int | None = None) -> tuple[Fraction, Fraction]:
    """
    Encadrement rationnel [lo, hi] de ln(x)

    ``Decimal.ln`` est correctement arrondi à la précision courante ;
    élargir d'une unité du dernier chiffre de chaque côté donne donc un
    encadrement sûr.

    Args:
        x: Entier >= 1
        digits: Chiffres significatifs (DOMINATION_LN_DIGITS par défaut)

    Returns:
        tuple: (lo, hi) avec lo <= ln(x) <= hi
    """
    if x < 1:
        raise ValueError(f"ln_interval exige x >= 1 (reçu {x})")
    if x == 1:
        return Fraction(0), Fraction(0)
    digits = digits or get_settings().ln_digits
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x).ln()
    ulp = Fraction(Decimal(1).scaleb(value.adjusted() - digits + 1))
    centre = Fraction(value)
    return centre - ulp, centre + ulp


def to_decimal(q: Fraction, digits: int, rounding=ROUND_CEILING) -> Decimal:
    """Conversion d'un rationnel en décimal arrondi dans le sens demandé"""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        return Decimal(q.numerator) / Decimal(q.denominator)


def approx(q, significant: int = 6) -> str:
    """Rendu lisible « ≈x » à 6 chiffres significatifs"""
    return f"≈{float(q):.{significant}g}"


# ============================================================================
# BORNES ÉLÉMENTAIRES
# ============================================================================

def frac_sandwich(g: Graph) -> tuple[Fraction, Fraction]:
    """(n/(1+Δ), n/(1+δ)), encadrement exact de γ_f"""
    low, high = degree_stats(g)
    return Fraction(g.n, 1 + high), Fraction(g.n, 1 + low)


def cssf_value(n: int, delta: int) -> Fraction:
    """n·[1 - Π_{i=1}^{δ+1} iδ/(iδ+1)] ; pour δ = 0 le produit vaut 0 et la borne vaut n"""
    product = Fraction(1)
    for i in range(1, delta + 2):
        product *= Fraction(i * delta, i * delta + 1)
    return n * (1 - product)


def cssf_bound(g: Graph) -> Fraction:
    """Borne produit sur γ_g, évaluée en rationnels exacts"""
    low, _ = degree_stats(g)
    return cssf_value(g.n, low)


def ratio_interval(max_degree: int, digits: int | None = None) -> tuple[Fraction, Fraction]:
    """Encadrement de 1 + ln(1+Δ)"""
    lo, hi = ln_interval(1 + max_degree, digits)
    return 1 + lo, 1 + hi


def ratio_bound(g: Graph, digits: int | None = None) -> Decimal:
    """1 + ln(1+Δ) arrondi vers le haut"""
    digits = digits or get_settings().ln_digits
    _, high = degree_stats(g)
    _, hi = ratio_interval(high, digits)
    return to_decimal(hi, digits, ROUND_CEILING)


def expected_dominating_psets(n: int, p: int, edge_probability=Fraction(1, 2),
                              digits: int | None = None) -> Decimal:
    """
    Espérance du nombre de p-ensembles dominants de G(n, q)

    E = C(n,p)·[1-(1-q)^p]^{n-p}, calculée exactement puis convertie.

    Args:
        n: Ordre du graphe
        p: Taille des ensembles (1 <= p <= n)
        edge_probability: q, 1/2 par défaut

    Returns:
        Decimal: la valeur de E
    """
    if not 1 <= p <= n:
        raise ValueError(f"expected_dominating_psets exige 1 <= p <= n (p={p}, n={n})")
    q = Fraction(edge_probability)
    exact = comb(n, p) * (1 - (1 - q) ** p) ** (n - p)
    return to_decimal(exact, digits or get_settings().ln_digits, ROUND_FLOOR)


def dominator_size_threshold(n: int, epsilon: float) -> int:
    """p = floor((1-ε)·log2 n), taille en dessous de laquelle G(n,1/2) n'a p.s. aucun ensemble dominant"""
    if not 0 < epsilon < 1:
        raise ValueError(f"ε doit être dans ]0, 1[ (reçu {epsilon})")
    return math.floor((1 - epsilon) * math.log2(n))


def degree_concentration(g: Graph) -> tuple[float, float]:
    """Écarts (δ - n/2)/√n et (Δ - n/2)/√n"""
    low, high = degree_stats(g)
    root = math.sqrt(g.n)
    return (low - g.n / 2) / root, (high - g.n / 2) / root


def ratio_diagnostics(gamma_f, gamma=None, gamma_g=None) -> dict:
    """Rapports γ/γ_f, γ_g/γ et γ_g/γ_f (None si une mesure manque)"""
    gamma_f = Fraction(gamma_f)
    return {
        'gamma_over_gamma_f': None if gamma is None else gamma / gamma_f,
        'gamma_g_over_gamma': None if gamma is None or gamma_g is None else Fraction(gamma_g, gamma),
        'gamma_g_over_gamma_f': None if gamma_g is None else gamma_g / gamma_f,
    }


def corollary_forms(g: Graph, gamma_f, gamma) -> dict:
    """Quotients sans constante γ/(γ_f·ln Δ) (Δ >= 2) et γ/(γ_f·ln n) (n >= 2)"""
    _, high = degree_stats(g)
    base = gamma / float(gamma_f)
    return {
        'per_log_max_degree': base / math.log(high) if high >= 2 else None,
        'per_log_order': base / math.log(g.n) if g.n >= 2 else None,
    }


# ============================================================================
# RAPPORT DE BORNES
# ============================================================================

@dataclass(frozen=True)
class Check:
    """Une inégalité lhs <= rhs ; holds vaut None si un opérande manque"""

    name: str
    lhs: object
    rhs: object
    holds: bool | None


@dataclass(frozen=True)
class BoundsReport:
    """
    Toutes les bornes d'un graphe et les mesures fournies

    Les verdicts ne sont jamais stockés : ``checks`` les recalcule à
    partir des valeurs conservées.
    """

    label: str
    n: int
    min_degree: int
    max_degree: int
    frac_lower: Fraction
    frac_upper: Fraction
    ratio_lo: Fraction
    ratio_hi: Fraction
    cssf_bound: Fraction
    gamma_f: Fraction | None = None
    gamma: int | None = None
    gamma_g: int | None = None
    digits: int = 50

    @property
    def ratio_bound(self) -> Decimal:
        return to_decimal(self.ratio_hi, self.digits, ROUND_CEILING)

    @property
    def checks(self) -> tuple[Check, ...]:
        gf, gm, gg = self.gamma_f, self.gamma, self.gamma_g

        def le(name, lhs, rhs):
            if lhs is None or rhs is None:
                return Check(name, lhs, rhs, None)
            return Check(name, lhs, rhs, lhs <= rhs)

        # La borne logarithmique n'est déclarée tenue que contre la borne
        # inférieure de 1+ln(1+Δ).
        ratio = None if gf is None or gg is None else Check(
            'gamma_g <= (1+ln(1+Delta))*gamma_f', gg, self.ratio_hi * gf, gg <= self.ratio_lo * gf)
        return (
            Check('frac_lower <= frac_upper', self.frac_lower, self.frac_upper,
                  self.frac_lower <= self.frac_upper),
            le('n/(1+Delta) <= gamma_f', self.frac_lower, gf),
            le('gamma_f <= n/(1+delta)', gf, self.frac_upper),
            le('gamma_f <= gamma', gf, gm),
            le('gamma <= gamma_g', gm, gg),
            ratio or Check('gamma_g <= (1+ln(1+Delta))*gamma_f', gg, None, None),
            le('gamma_g <= cssf_bound', gg, self.cssf_bound),
        )

    @property
    def partial(self) -> bool:
        return any(c.holds is None for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if c.holds is False)

    @property
    def chain_ok(self) -> bool:
        return not self.failures


def verify_chain(g: Graph, gamma_f=None, gamma=None, gamma_g=None, label: str = "",
                 digits: int | None = None) -> BoundsReport:
    """
    Construit le rapport de bornes pour les mesures fournies

    Args:
        g: Le graphe
        gamma_f: γ_f exact (module fractional_lp)
        gamma: γ exact (module exact), optionnel
        gamma_g: γ_g (module greedy)
        label: Nom du graphe dans les tableaux

    Returns:
        BoundsReport: rapport, partiel si une mesure manque
    """
    digits = digits or get_settings().ln_digits
    low, high = degree_stats(g)
    frac_lower, frac_upper = frac_sandwich(g)
    ratio_lo, ratio_hi = ratio_interval(high, digits)
    return BoundsReport(
        label=label, n=g.n, min_degree=low, max_degree=high,
        frac_lower=frac_lower, frac_upper=frac_upper,
        ratio_lo=ratio_lo, ratio_hi=ratio_hi, cssf_bound=cssf_value(g.n, low),
        gamma_f=None if gamma_f is None else Fraction(gamma_f),
        gamma=gamma, gamma_g=gamma_g, digits=digits,
    )


class Tighter(str, Enum):
    RATIO_FORM = "ratio_form"
    CSSF_FORM = "cssf_form"
    TIE = "tie"


@dataclass(frozen=True)
class BoundComparison:
    ratio_form: Decimal
    cssf_form: Fraction
    tighter: Tighter


def compare_gg_bounds(g: Graph, gamma_f, digits: int | None = None) -> BoundComparison:
    """
    Compare les deux majorants sans constante de γ_g

    (1+ln(1+Δ))·γ_f et n·[1 - Π iδ/(iδ+1)]. Le verdict n'est
    rendu que si l'encadrement de (1') est entièrement d'un côté de (2').
    """
    digits = digits or get_settings().ln_digits
    gamma_f = Fraction(gamma_f)
    low, high = degree_stats(g)
    lo, hi = ratio_interval(high, digits)
    cssf = cssf_value(g.n, low)
    if hi * gamma_f < cssf:
        tighter = Tighter.RATIO_FORM
    elif lo * gamma_f > cssf:
        tighter = Tighter.CSSF_FORM
    else:
        tighter = Tighter.TIE
    return BoundComparison(to_decimal(hi * gamma_f, digits, ROUND_CEILING), cssf, tighter)
