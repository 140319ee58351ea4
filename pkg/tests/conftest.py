"""Fixtures et stratégies partagées par les tests"""

import networkx as nx
import pytest
from hypothesis import strategies as st
from hypothesis.strategies import composite

from domination.config import Settings
from domination.graph_core import Graph


def from_nx(G) -> Graph:
    """Convertit un graphe networkx à sommets 0..n-1"""
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def edgeless(n: int) -> Graph:
    return Graph.from_edges(n, [])


@composite
def graphs(draw, min_nodes=1, max_nodes=9):
    """Graphes simples arbitraires (arêtes tirées indépendamment)"""
    n = draw(st.integers(min_value=min_nodes, max_value=max_nodes))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return Graph.from_edges(n, edges)


@pytest.fixture
def p4():
    return from_nx(nx.path_graph(4))


@pytest.fixture
def c4():
    return from_nx(nx.cycle_graph(4))


@pytest.fixture
def c5():
    return from_nx(nx.cycle_graph(5))


@pytest.fixture
def petersen():
    return from_nx(nx.petersen_graph())


@pytest.fixture
def tmp_settings(tmp_path):
    """Réglages par défaut, résultats dans un dossier temporaire"""
    return Settings(results_dir=tmp_path)
