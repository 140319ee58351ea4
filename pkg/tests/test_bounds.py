import math
from decimal import ROUND_FLOOR, Decimal
from fractions import Fraction

import networkx as nx
import pytest

from conftest import edgeless, from_nx
from domination.bounds import (Tighter, approx, compare_gg_bounds, corollary_forms, cssf_bound, cssf_value,
                               degree_concentration, dominator_size_threshold, expected_dominating_psets,
                               frac_sandwich, ln_interval, ratio_bound, ratio_diagnostics, to_decimal,
                               verify_chain)
from domination.constructions import clique_chain_H, hairy_clique, torus_J
from domination.graph_core import Graph


class TestLnInterval:
    def test_one_is_exact(self):
        assert ln_interval(1) == (0, 0)

    @pytest.mark.parametrize("x", [2, 3, 33, 1000])
    def test_encloses_float_log(self, x):
        lo, hi = ln_interval(x)
        assert lo < hi
        assert float(lo) == pytest.approx(math.log(x), rel=1e-15)
        assert hi - lo < Fraction(1, 10 ** 40)

    def test_lower_precision_still_overlaps(self):
        lo30, hi30 = ln_interval(7, digits=30)
        lo50, hi50 = ln_interval(7, digits=50)
        assert lo30 <= lo50 <= hi50 <= hi30

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            ln_interval(0)


class TestClosedForms:
    def test_ratio_bound_triangle(self):
        assert str(ratio_bound(from_nx(nx.complete_graph(3)))).startswith("2.0986122886")

    def test_ratio_bound_clique_chain(self):
        assert str(ratio_bound(clique_chain_H(4))).startswith("4.4965")

    def test_cssf_complete_graph(self):
        assert cssf_bound(from_nx(nx.complete_graph(4))) == Fraction(848, 455)

    def test_cssf_edgeless_is_n(self):
        assert cssf_bound(edgeless(6)) == 6

    def test_frac_sandwich(self, p4, petersen):
        assert frac_sandwich(p4) == (Fraction(4, 3), Fraction(2))
        assert frac_sandwich(petersen) == (Fraction(5, 2), Fraction(5, 2))

    @pytest.mark.parametrize("d", [2, 4, 8, 16, 32, 64])
    def test_cssf_order_of_magnitude(self, d):
        n = 128
        ratio = float(cssf_value(n, d)) / (n * math.log(d) / d)
        assert 0.3 <= ratio <= 3.5

    def test_cssf_non_increasing_in_min_degree(self):
        values = [cssf_value(60, d) for d in range(1, 60)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_to_decimal_directed_rounding(self):
        assert to_decimal(Fraction(1, 3), 3) == Decimal("0.334")
        assert to_decimal(Fraction(1, 3), 3, ROUND_FLOOR) == Decimal("0.333")

    def test_approx(self):
        assert approx(Fraction(64, 27)) == "≈2.37037"


class TestRandomGraphForms:
    def test_expected_psets_singletons(self):
        assert expected_dominating_psets(10, 1) == Decimal(10) / Decimal(512)

    def test_expected_psets_pairs(self):
        value = expected_dominating_psets(12, 2)
        assert float(value) == pytest.approx(66 * 0.75 ** 10)

    def test_expected_psets_range(self):
        with pytest.raises(ValueError):
            expected_dominating_psets(5, 6)

    def test_threshold(self):
        assert dominator_size_threshold(1024, 0.5) == 5
        with pytest.raises(ValueError):
            dominator_size_threshold(1024, 1.0)

    def test_degree_concentration(self):
        assert degree_concentration(from_nx(nx.complete_graph(4))) == (0.5, 0.5)

    def test_ratio_diagnostics(self):
        d = ratio_diagnostics(Fraction(4, 3), 2, 3)
        assert d == {'gamma_over_gamma_f': Fraction(3, 2),
                     'gamma_g_over_gamma': Fraction(3, 2),
                     'gamma_g_over_gamma_f': Fraction(9, 4)}
        assert ratio_diagnostics(2)['gamma_g_over_gamma'] is None

    def test_corollary_forms(self, c4):
        forms = corollary_forms(c4, Fraction(4, 3), 2)
        assert forms['per_log_max_degree'] == pytest.approx(1.5 / math.log(2))
        assert forms['per_log_order'] == pytest.approx(1.5 / math.log(4))
        assert corollary_forms(Graph(1, (1,)), 1, 1) == {'per_log_max_degree': None, 'per_log_order': None}


class TestVerifyChain:
    def test_complete_chain_holds(self, p4):
        report = verify_chain(p4, Fraction(2), 2, 2, label="P4")
        assert report.chain_ok
        assert not report.partial
        assert all(c.holds for c in report.checks)

    def test_torus(self):
        report = verify_chain(torus_J(2), Fraction(64, 27), 4, 4)
        assert report.chain_ok
        assert (report.min_degree, report.max_degree) == (26, 26)

    def test_failure_is_reported(self, p4):
        report = verify_chain(p4, Fraction(2), 1, 2)
        assert not report.chain_ok
        assert [c.name for c in report.failures] == ['gamma_f <= gamma']

    def test_missing_measure_is_partial(self, p4):
        report = verify_chain(p4, Fraction(2), None, 2)
        assert report.partial
        assert report.chain_ok

    def test_ratio_bound_property(self, c5):
        assert verify_chain(c5).ratio_bound == ratio_bound(c5)


class TestCompareBounds:
    @pytest.mark.parametrize("t", [4, 5, 6, 7])
    def test_ratio_form_tighter_on_clique_chain(self, t):
        assert compare_gg_bounds(clique_chain_H(t), 4).tighter is Tighter.RATIO_FORM

    @pytest.mark.parametrize("t", [4, 8, 16, 32])
    def test_cssf_form_tighter_on_hairy_clique(self, t):
        assert compare_gg_bounds(hairy_clique(t), t).tighter is Tighter.CSSF_FORM

    def test_tie_on_single_vertex(self):
        comparison = compare_gg_bounds(Graph(1, (1,)), 1)
        assert comparison.tighter is Tighter.TIE
        assert comparison.cssf_form == 1
