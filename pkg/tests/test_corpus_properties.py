"""Corpus-wide structural properties that every construction must satisfy."""

import pytest

from ringlab import verify_ring_axioms
from ringlab.corpus import build_corpus
from ringlab.invariants import jacobson_radical, unit_codes, uu_exponent
from ringlab.predicates import is_n_uu, is_pi_uu


@pytest.fixture(scope="module")
def corpus():
    return [r for r in build_corpus() if not isinstance(r, str)]


def test_every_corpus_ring_passes_axioms(corpus):
    for ring in corpus:
        verdict = verify_ring_axioms(ring)
        assert verdict.holds, (ring.label, verdict.note, verdict.witness)
        assert verdict.mode == "exhaustive"


def test_every_corpus_ring_is_pi_uu(corpus):
    for ring in corpus:
        assert is_pi_uu(ring).holds, ring.label


def test_corpus_exponent_divisibility(corpus):
    # n-UU holds exactly on the multiples of the uu-exponent
    for ring in corpus:
        d = uu_exponent(ring)
        assert is_n_uu(ring, d).holds
        if d > 1:
            assert not is_n_uu(ring, 1).holds or d == 1


def test_one_plus_radical_in_units_corpus_wide(corpus):
    for ring in corpus:
        unit_set = set(unit_codes(ring))
        for a in jacobson_radical(ring).members().tolist():
            assert ring.add(ring.one, a) in unit_set, ring.label
