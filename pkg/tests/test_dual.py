import random

import pytest

from acforge.dual import (
    AugmentedPresentation,
    Occurrence,
    OrderingWitness,
    PairInsertion,
    align,
    default_witness,
    dualize,
    format_witness,
    insert_pairs,
    occurrence_lists,
    parse_witness,
    read_bundle,
    transpose_check,
    verify_knot_certificate,
    write_bundle,
)
from acforge.coset import Finite, enumerate_cosets
from acforge.intmatrix import exponent_matrix
from acforge.moves import InsertPair, replay, invert_certificate
from acforge.presentation import (
    EMPTY_PRESENTATION,
    Presentation,
    parse_presentation,
)
from acforge.words import free_reduce

RAPAPORT = parse_presentation("< a, b, c | b^-1 c^-2 b c^3, c^-1 a^-2 c a^3, a^-1 b^-2 a b^3 >")
POINCARE = parse_presentation("< a, b | a b^2 a b^-1, a^4 b a^-1 b >")


def random_balanced(rng, max_gens=4, max_len=10):
    m = rng.randint(1, max_gens)
    gens = tuple(f"g{i + 1}" for i in range(m))
    rels = tuple(
        free_reduce([rng.choice([1, -1]) * rng.randint(1, m) for _ in range(rng.randint(0, max_len))])
        for _ in range(m)
    )
    return Presentation(gens, rels)


def test_default_witness_single_generator():
    w = default_witness(parse_presentation("< a | a >"))
    assert w.per_generator == ((Occurrence(1, 0, 1),),)


def test_default_witness_poincare_generator_a():
    w = default_witness(POINCARE)
    assert w.per_generator[0] == (
        Occurrence(1, 0, 1),
        Occurrence(1, 3, 1),
        Occurrence(2, 0, 1),
        Occurrence(2, 1, 1),
        Occurrence(2, 2, 1),
        Occurrence(2, 3, 1),
        Occurrence(2, 5, -1),
    )


def test_default_witness_rapaport_generator_a():
    w = default_witness(RAPAPORT)
    # a occurs in r2 (-,-,+,+,+) then r3 (-,+), in scan order
    assert w.per_generator[0] == (
        Occurrence(2, 1, -1),
        Occurrence(2, 2, -1),
        Occurrence(2, 4, 1),
        Occurrence(2, 5, 1),
        Occurrence(2, 6, 1),
        Occurrence(3, 0, -1),
        Occurrence(3, 3, 1),
    )


def test_default_witness_requires_balanced():
    with pytest.raises(ValueError):
        default_witness(parse_presentation("< a | >"))


def test_dualize_poincare_matches_known_dual():
    d = dualize(POINCARE)
    assert d.generators == ("x1", "x2")
    assert d.relators[0] == (1, 1, 2, 2, 2)  # alpha^2 beta^3, verbatim
    assert d.relators[1] == (1, 2, 2)  # alpha beta^2 = (alpha^-1 beta^-2)^-1 rotated


def test_dualize_rapaport_single_letters():
    d = dualize(RAPAPORT)
    assert d.relators == ((2,), (3,), (1,))


def test_dualize_identity_presentation():
    d = dualize(parse_presentation("< a | a >"))
    assert d == Presentation(("x1",), ((1,),))


def test_dualize_rejects_bad_witness():
    p = parse_presentation("< a | a >")
    with pytest.raises(ValueError):
        dualize(p, OrderingWitness(((Occurrence(1, 5, 1),),)))
    with pytest.raises(ValueError):
        dualize(p, OrderingWitness(()))


def test_transpose_identity_examples():
    assert transpose_check(parse_presentation("< a | a >"))
    assert transpose_check(POINCARE)
    a = exponent_matrix(POINCARE)
    assert exponent_matrix(dualize(POINCARE)) == a.transpose()
    assert a.transpose().rows == ((2, 3), (1, 2))


def test_transpose_identity_randomized():
    rng = random.Random(67)
    for _ in range(600):
        p = random_balanced(rng)
        assert transpose_check(p)


def test_witness_independence_of_abelianization():
    rng = random.Random(71)
    for _ in range(200):
        p = random_balanced(rng, max_gens=3, max_len=8)
        occs = [list(o) for o in occurrence_lists(p)]
        for lst in occs:
            rng.shuffle(lst)
        w = OrderingWitness(tuple(tuple(o) for o in occs))
        d = dualize(p, w)
        assert exponent_matrix(d) == exponent_matrix(p).transpose()


def test_double_dual_matrix():
    rng = random.Random(73)
    for _ in range(200):
        p = random_balanced(rng)
        dd = dualize(dualize(p))
        assert exponent_matrix(dd) == exponent_matrix(p)


def test_insert_pairs_zero_is_identity():
    aug = insert_pairs(POINCARE, [])
    assert aug.relators == POINCARE.relators
    assert aug.reduced() == POINCARE


def test_insert_pairs_keeps_raw_and_matrix():
    p = parse_presentation("< a | a >")
    aug = insert_pairs(p, [PairInsertion(relator=1, generator=1, count=1, position=1)])
    assert aug.relators == ((1, 1, -1),)
    assert exponent_matrix(aug).rows == ((1,),)
    assert aug.reduced() == p


def test_insert_pairs_rapaport_matrix_unchanged():
    rng = random.Random(79)
    for _ in range(50):
        insertions = [
            PairInsertion(
                relator=rng.randint(1, 3),
                generator=rng.randint(1, 3),
                count=rng.randint(0, 2),
                position=0,
            )
            for _ in range(rng.randint(0, 4))
        ]
        aug = insert_pairs(RAPAPORT, insertions)
        assert exponent_matrix(aug).rows == ((0, 0, 1), (1, 0, 0), (0, 1, 0))
        assert aug.reduced() == RAPAPORT


def test_insert_pairs_validates():
    with pytest.raises(ValueError):
        insert_pairs(RAPAPORT, [PairInsertion(4, 1, 1, 0)])
    with pytest.raises(ValueError):
        insert_pairs(RAPAPORT, [PairInsertion(1, 4, 1, 0)])
    with pytest.raises(ValueError):
        insert_pairs(RAPAPORT, [PairInsertion(1, 1, 1, 99)])


def test_align_single_generator():
    kc = align(parse_presentation("< a | a >"))
    assert kc.dual == Presentation(("x1",), ((1,),))
    assert kc.augmented.relators == ((1,),)
    assert len(kc.trivialization.moves) == 1
    assert verify_knot_certificate(kc) == []
    inv = invert_certificate(kc.trivialization)
    assert inv.end == EMPTY_PRESENTATION and replay(inv)


def test_align_poincare():
    kc = align(POINCARE)
    assert verify_knot_certificate(kc) == []
    assert dualize(kc.augmented, kc.witness) == kc.dual
    assert replay(kc.trivialization)
    assert enumerate_cosets(kc.dual, max_cosets=10_000) == Finite(1)
    assert replay(invert_certificate(kc.trivialization))


def test_align_rapaport():
    kc = align(RAPAPORT)
    assert kc.source == RAPAPORT
    assert verify_knot_certificate(kc) == []
    assert enumerate_cosets(kc.dual, max_cosets=10_000) == Finite(1)


def test_align_requires_perfect():
    with pytest.raises(ValueError, match="not perfect"):
        align(parse_presentation("< a, b | a b, a b >"))
    with pytest.raises(ValueError, match="not balanced"):
        align(parse_presentation("< a | >"))


def test_align_empty_presentation():
    kc = align(EMPTY_PRESENTATION)
    assert kc.dual == EMPTY_PRESENTATION
    assert kc.trivialization.moves == ()


def test_align_random_perfect_presentations():
    # start from duals of unimodular constructions, which are perfect by design
    from acforge.lemma2 import presentation_from_matrix
    from tests.test_lemma2 import random_unimodular

    rng = random.Random(83)
    count = 0
    while count < 25:
        n = rng.randint(1, 3)
        p, _ = presentation_from_matrix(random_unimodular(rng, n, n_ops=6))
        kc = align(p)
        assert verify_knot_certificate(kc) == []
        count += 1


def test_witness_text_round_trip():
    w = default_witness(POINCARE)
    assert parse_witness(format_witness(w)) == w
    empty = OrderingWitness(())
    assert parse_witness(format_witness(empty)) == empty


def test_bundle_round_trip(tmp_path):
    kc = align(POINCARE)
    write_bundle(kc, tmp_path / "out")
    back = read_bundle(tmp_path / "out")
    assert back == kc
    assert verify_knot_certificate(back) == []
