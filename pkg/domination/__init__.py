"""
Nombres de domination d'un graphe : γ_f exact (simplexe rationnel),
γ exact (recherche exhaustive, branch and bound), γ glouton, constructions
extrémales et vérification des bornes qui les relient
"""

from .constructions import ConstructionSpec, Family, build, clique_chain_H, hairy_clique, random_graph, torus_J
from .exact import brute_force_gamma, branch_bound_gamma, solve_gamma
from .fractional_lp import solve_gamma_f, verify_strong_duality
from .graph_core import Graph, parse_graph, format_graph, read_graph, write_graph
from .greedy import gamma_g, greedy_sequence, packing_certificate
from .bounds import verify_chain, compare_gg_bounds

__version__ = "1.0.0"
