import random

import pytest

from acforge.moves import Destabilize, replay
from acforge.presentation import EMPTY_PRESENTATION, Presentation, parse_presentation
from acforge.search import (
    CanonicalForm,
    SearchLimits,
    canonical_form,
    canonical_relator,
    search_trivialization,
)
from acforge.words import free_reduce, invert, rotate

DUAL_RAPAPORT = parse_presentation(
    "< alpha, beta, gamma | alpha^3 alpha^-2, beta^3 beta^-2, gamma^3 gamma^-2 >"
)
DUAL_POINCARE = parse_presentation("< alpha, beta | alpha^2 beta^3, alpha^-1 beta^-2 >")
TRIVIAL23 = parse_presentation("< a, b | a^-1 b^-2 a b^3, b^-1 a^-2 b a^3 >")

# regression constants, recorded from the first exhaustive run
DUAL_POINCARE_DEPTH = 3


def test_canonical_relator_brute_force():
    rng = random.Random(101)
    for _ in range(400):
        w = free_reduce([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 10))])
        got = canonical_relator(w)
        # oracle: enumerate every rotation of the cyclic reduction and of its
        # inverse, order by the documented letter order
        from acforge.words import cyclic_reduce, word_key

        core, _ = cyclic_reduce(w)
        candidates = {core}
        for cand in (core, invert(core)):
            for k in range(len(cand)):
                candidates.add(rotate(cand, k))
        assert got == min(candidates, key=word_key)


def test_canonical_relator_idempotent():
    rng = random.Random(103)
    for _ in range(300):
        w = free_reduce([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 12))])
        c = canonical_relator(w)
        assert canonical_relator(c) == c


def test_canonical_form_inversion_symmetry():
    assert canonical_form(parse_presentation("< a | a^-1 >")) == canonical_form(
        parse_presentation("< a | a >")
    )


def test_canonical_form_rotation_symmetry_keeps_duplicates():
    cf = canonical_form(parse_presentation("< a, b | b a, a b >"))
    assert cf.relators == ((1, 2), (1, 2))


def test_canonical_form_inverse_rotation():
    cf = canonical_form(parse_presentation("< a, b | b^-1 a^-1, a b >"))
    assert cf.relators == ((1, 2), (1, 2))


def test_canonical_form_sorts_relators():
    cf = canonical_form(parse_presentation("< a, b | b, a >"))
    assert cf.relators == ((1,), (2,))
    assert isinstance(cf, CanonicalForm)


def test_search_requires_balanced():
    with pytest.raises(ValueError):
        search_trivialization(parse_presentation("< a | >"))


def test_search_empty_presentation():
    r = search_trivialization(EMPTY_PRESENTATION)
    assert r.found and r.certificate.moves == ()


def test_search_dual_rapaport_exactly_three_destabilizations():
    r = search_trivialization(DUAL_RAPAPORT)
    assert r.found
    assert r.certificate.moves == (
        Destabilize(3, 3),
        Destabilize(2, 2),
        Destabilize(1, 1),
    )
    assert replay(r.certificate)
    assert r.certificate.end == EMPTY_PRESENTATION


def test_search_dual_poincare_finds_certificate():
    r = search_trivialization(DUAL_POINCARE)
    assert r.found
    assert replay(r.certificate)
    assert r.certificate.start == DUAL_POINCARE
    assert r.certificate.end == EMPTY_PRESENTATION
    assert r.found_depth == DUAL_POINCARE_DEPTH


def test_search_not_found_on_trivial23_small_budget():
    r = search_trivialization(TRIVIAL23, SearchLimits(max_depth=4))
    assert not r.found
    assert r.limit_hit == "depth"
    assert r.certificate is None


def test_search_determinism():
    a = search_trivialization(DUAL_POINCARE)
    b = search_trivialization(DUAL_POINCARE)
    assert a.certificate == b.certificate
    assert (a.states_seen, a.states_expanded) == (b.states_seen, b.states_expanded)


def test_search_conjugated_start_needs_normalization_prefix():
    # relator stored as a conjugate; the certificate must strip it with moves
    p = Presentation(("a", "b"), ((2, 1, -2), (2,)))
    r = search_trivialization(p)
    assert r.found
    assert replay(r.certificate)
    assert r.certificate.start == p


def test_search_certificates_replay_on_random_trivializable_inputs():
    from acforge.lemma2 import presentation_from_matrix
    from tests.test_lemma2 import random_unimodular

    rng = random.Random(107)
    found = 0
    for _ in range(40):
        n = rng.randint(1, 2)
        p, _ = presentation_from_matrix(random_unimodular(rng, n, n_ops=4))
        r = search_trivialization(p, SearchLimits(max_depth=6, max_states=50_000))
        if r.found:
            assert replay(r.certificate)
            assert r.certificate.end == EMPTY_PRESENTATION
            found += 1
    assert found >= 30  # tiny unimodular builds should nearly always trivialize


def test_search_stats_monotone():
    r = search_trivialization(DUAL_POINCARE)
    assert r.states_expanded <= r.states_seen
    assert r.states_seen >= 1
