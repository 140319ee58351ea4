import json
from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import edgeless
from domination.bounds import verify_chain
from domination.certificates import build_certificate, bundle_to_dict, verify_bundle, write_bundle
from domination.constructions import clique_chain_H, hairy_clique, random_graph, torus_J
from domination.errors import CertificateError
from domination.experiments import derive_seed
from domination.graph_core import is_regular


class TestBuildCertificate:
    def test_clique_chain(self):
        bundle = build_certificate(clique_chain_H(4), label="H4")
        assert bundle.solution.value == 4
        assert bundle.solution.dual.total == 4
        assert bundle.trace.m == 4
        assert bundle.packing.total <= bundle.solution.value

    def test_edgeless_packing_is_tight(self):
        bundle = build_certificate(edgeless(3))
        assert bundle.packing.weights == (1, 1, 1)
        assert bundle.packing_report.min_slack == 0

    def test_cycle(self, c5):
        bundle = build_certificate(c5)
        assert bundle.solution.value == Fraction(5, 3)
        assert bundle.audit.ok
        assert bundle.harmonic_failures == ()


class TestVerifyBundle:
    def test_tampered_value(self, c5):
        bundle = build_certificate(c5)
        tampered = replace(bundle, solution=replace(bundle.solution, value=Fraction(2)))
        with pytest.raises(CertificateError) as exc:
            verify_bundle(tampered)
        assert exc.value.constraint == 'strong_duality'

    def test_harmonic_failure(self, c5):
        bundle = replace(build_certificate(c5), harmonic_failures=((0, 1),))
        with pytest.raises(CertificateError, match="harmonic_order"):
            verify_bundle(bundle)


class TestSerialization:
    def test_json_document(self, tmp_path, p4):
        path = write_bundle(build_certificate(p4, label="P4"), tmp_path / "p4.certificate.json")
        data = json.loads(path.read_text(encoding='utf-8'))
        assert data['label'] == "P4"
        assert (data['n'], data['m']) == (4, 3)
        assert data['gamma_f'] == "2/1"
        assert data['greedy']['gamma_g'] == 2
        assert data['greedy']['steps'][0] == {'step': 1, 'vertex': 1, 'f_set': [0, 1, 2]}
        assert data['audit']['argmax'] == 2
        assert data['audit']['sums'][2] == "5/3"

    def test_lower_bounds_rounded_down(self, p4):
        data = bundle_to_dict(build_certificate(p4), digits=10)
        assert all(len(b.replace('.', '').lstrip('0')) <= 10 for b in data['audit']['bounds_lower'])


def _corpus():
    graphs = [torus_J(2)] + [clique_chain_H(t) for t in (4, 5, 6, 7)] + [hairy_clique(t) for t in (4, 8, 16)]
    return graphs + [random_graph(10 + i, derive_seed(20240611, 10 + i, i)) for i in range(50)]


@pytest.mark.slow
def test_corpus_certificates_and_chain():
    for g in _corpus():
        bundle = build_certificate(g)
        gamma_f = bundle.solution.value
        assert bundle.packing_report.feasible
        assert bundle.trace.total_weight == bundle.trace.m
        report = verify_chain(g, gamma_f, gamma_g=bundle.trace.m)
        assert report.chain_ok
        if is_regular(g) is not None:
            assert gamma_f == Fraction(g.n, 1 + is_regular(g))
