from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import edgeless, from_nx, graphs, to_nx
from domination import exact
from domination.config import Settings
from domination.constructions import clique_chain_H, hairy_clique, random_graph, torus_diagonal, torus_J
from domination.errors import BudgetExceededError, CertificateError
from domination.exact import (DominationResult, Method, branch_bound_gamma, brute_force_gamma, format_result,
                              solve_gamma, verify_result)
from domination.graph_core import Graph, is_dominating


class TestBruteForce:
    @pytest.mark.parametrize("make, value", [
        (lambda: Graph(1, (1,)), 1),
        (lambda: from_nx(nx.path_graph(3)), 1),
        (lambda: from_nx(nx.cycle_graph(5)), 2),
        (lambda: from_nx(nx.petersen_graph()), 3),
        (lambda: edgeless(4), 4),
        (lambda: hairy_clique(5), 5),
    ])
    def test_known_values(self, make, value):
        result = brute_force_gamma(make())
        assert result.value == value
        assert result.proven_optimal
        assert result.method is Method.EXHAUSTIVE

    def test_lexicographically_first_witness(self, c5):
        assert brute_force_gamma(c5).witness == (0, 2)

    def test_vertex_cap(self):
        with pytest.raises(BudgetExceededError) as exc:
            brute_force_gamma(edgeless(31))
        assert exc.value.budget == 'brute_force_vertex_cap'

    def test_size_cap_too_small(self, petersen):
        with pytest.raises(BudgetExceededError, match="<= 2"):
            brute_force_gamma(petersen, size_cap=2)

    @pytest.mark.slow
    def test_torus_j2_no_three_subset_dominates(self):
        g = torus_J(2)
        result = brute_force_gamma(g, size_cap=4)
        assert result.value == 4
        assert is_dominating(g, torus_diagonal(2))


class TestBranchAndBound:
    def test_torus_j2(self):
        assert branch_bound_gamma(torus_J(2)).value == 4

    @pytest.mark.parametrize("t", [4, 5, 6])
    def test_clique_chain(self, t):
        result = branch_bound_gamma(clique_chain_H(t))
        assert result.value == 4
        assert result.method is Method.BRANCH_AND_BOUND

    @pytest.mark.slow
    def test_clique_chain_t7(self):
        assert branch_bound_gamma(clique_chain_H(7)).value == 4

    def test_hairy_clique(self):
        assert branch_bound_gamma(hairy_clique(8)).value == 8

    def test_wrong_hint_still_optimal(self, petersen):
        assert branch_bound_gamma(petersen, upper_hint=1).value == 3
        assert branch_bound_gamma(petersen, upper_hint=3).value == 3

    def test_time_limit(self, monkeypatch):
        monkeypatch.setattr(exact, "_CLOCK_EVERY", 1)
        with pytest.raises(BudgetExceededError) as exc:
            branch_bound_gamma(random_graph(40, 3), time_limit=-1)
        assert exc.value.budget == 'bnb_time_limit'

    @given(graphs(max_nodes=10))
    @settings(max_examples=100, deadline=None)
    def test_agrees_with_networkx_check(self, g):
        result = branch_bound_gamma(g)
        assert nx.is_dominating_set(to_nx(g), result.witness)
        assert result.value == brute_force_gamma(g).value

    def test_oracle_equivalence_on_seeded_graphs(self):
        mismatches = []
        for i in range(200):
            n = 1 + i % 14
            p = (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5))[i % 3]
            g = random_graph(n, 1000 + i, p)
            if branch_bound_gamma(g).value != brute_force_gamma(g).value:
                mismatches.append((n, 1000 + i, p))
        assert mismatches == []


class TestResult:
    def test_format(self, c5):
        assert format_result(brute_force_gamma(c5)) == "gamma=2 witness=[0,2] method=exhaustive optimal=true"

    def test_verify_rejects_bad_witness(self, c5):
        with pytest.raises(CertificateError) as exc:
            verify_result(c5, DominationResult(1, (0,), Method.EXHAUSTIVE, True))
        assert exc.value.constraint == 'witness_dominates'

    def test_verify_rejects_size_mismatch(self, c5):
        with pytest.raises(CertificateError):
            verify_result(c5, DominationResult(3, (0, 2), Method.EXHAUSTIVE, True))


class TestSolveGamma:
    def test_auto_uses_exhaustive_for_small_graphs(self, petersen):
        assert solve_gamma(petersen).method is Method.EXHAUSTIVE

    def test_auto_uses_branch_and_bound_above_fourteen(self):
        assert solve_gamma(hairy_clique(8)).method is Method.BRANCH_AND_BOUND

    def test_size_cap_selects_exhaustive(self):
        assert solve_gamma(hairy_clique(8), size_cap=8).method is Method.EXHAUSTIVE

    def test_vertex_cap_needs_force(self):
        g = edgeless(20)
        tight = Settings(bnb_vertex_cap=10)
        with pytest.raises(BudgetExceededError):
            solve_gamma(g, settings=tight)
        assert solve_gamma(g, settings=tight, force=True).value == 20
