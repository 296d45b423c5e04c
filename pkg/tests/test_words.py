import random

import pytest

from acforge.words import (
    concat,
    cyclic_reduce,
    exponent_vector,
    free_reduce,
    invert,
    is_cyclically_reduced,
    rotate,
    word_key,
)

A, B, C = 1, 2, 3


def reduce_random_order(letters, rng):
    """Oracle: delete cancelling pairs one at a time in a random order."""
    seq = list(letters)
    while True:
        sites = [i for i in range(len(seq) - 1) if seq[i] == -seq[i + 1]]
        if not sites:
            return tuple(seq)
        i = rng.choice(sites)
        del seq[i : i + 2]


def random_raw(rng, n_gens=3, max_len=40):
    return [rng.choice([1, -1]) * rng.randint(1, n_gens) for _ in range(rng.randint(0, max_len))]


def test_free_reduce_total_cancellation():
    assert free_reduce([A, -A]) == ()


def test_free_reduce_power_collision():
    # alpha^3 alpha^-2 reduces generator-wise to alpha
    assert free_reduce([A, A, A, -A, -A]) == (A,)


def test_free_reduce_already_reduced():
    w = (-B, -C, -C, B, C, C, C)  # b^-1 c^-2 b c^3: no adjacent cancelling pair
    assert free_reduce(w) == w


def test_free_reduce_idempotent_and_confluent():
    rng = random.Random(7)
    for _ in range(1500):
        raw = random_raw(rng)
        w = free_reduce(raw)
        assert free_reduce(w) == w
        assert reduce_random_order(raw, rng) == w


def test_free_reduce_rejects_zero():
    with pytest.raises(ValueError):
        free_reduce([1, 0, 2])


def test_invert_examples():
    assert invert(()) == ()
    assert invert((A, B, B)) == (-B, -B, -A)  # (a b^2)^-1 = b^-2 a^-1
    # (a^-1 b^-2 a b^3)^-1 = b^-3 a^-1 b^2 a
    assert invert((-A, -B, -B, A, B, B, B)) == (-B, -B, -B, -A, B, B, A)


def test_invert_involution():
    rng = random.Random(8)
    for _ in range(300):
        w = free_reduce(random_raw(rng))
        assert invert(invert(w)) == w


def test_concat_examples():
    w = (A, -B, C)
    assert concat((), w) == w
    assert concat(w, ()) == w
    assert concat((A, A), (B, B, B)) == (A, A, B, B, B)  # alpha^2 . beta^3
    assert concat((A, B), (-B, C)) == (A, C)


def test_concat_inverse_cancels_and_associativity():
    rng = random.Random(9)
    for _ in range(300):
        u = free_reduce(random_raw(rng, max_len=15))
        v = free_reduce(random_raw(rng, max_len=15))
        w = free_reduce(random_raw(rng, max_len=15))
        assert concat(u, invert(u)) == ()
        assert concat(concat(u, v), w) == concat(u, concat(v, w))
        assert concat(u, v) == free_reduce(tuple(u) + tuple(v))


def test_cyclic_reduce_examples():
    assert cyclic_reduce(free_reduce((B, -B, B))) == ((B,), ())
    assert cyclic_reduce((A, B, -A)) == ((B,), (A,))
    assert cyclic_reduce((-C, A, A, C)) == ((A, A), (-C,))


def test_cyclic_reduce_round_trip():
    rng = random.Random(10)
    for _ in range(500):
        w = free_reduce(random_raw(rng))
        core, conj = cyclic_reduce(w)
        assert is_cyclically_reduced(core)
        assert concat(concat(conj, core), invert(conj)) == w


def test_exponent_vector_examples():
    assert exponent_vector((-B, -C, -C, B, C, C, C), 3) == (0, 0, 1)
    assert exponent_vector((), 3) == (0, 0, 0)
    assert exponent_vector((A, B, B, A, -B), 2) == (2, 1)


def test_exponent_vector_range_check():
    with pytest.raises(ValueError):
        exponent_vector((A, C), 2)


def test_exponent_vector_homomorphism():
    rng = random.Random(11)
    for _ in range(400):
        u = free_reduce(random_raw(rng))
        v = free_reduce(random_raw(rng))
        eu = exponent_vector(u, 3)
        ev = exponent_vector(v, 3)
        assert exponent_vector(concat(u, v), 3) == tuple(a + b for a, b in zip(eu, ev))
        assert exponent_vector(invert(u), 3) == tuple(-a for a in eu)


def test_rotate():
    w = (A, B, C)
    assert rotate(w, 0) == w
    assert rotate(w, 1) == (B, C, A)
    assert rotate(w, -1) == (C, A, B)
    assert rotate(w, 4) == rotate(w, 1)
    assert rotate((), 5) == ()


def test_word_key_orders_positive_before_inverse():
    assert word_key((A,)) < word_key((-A,)) < word_key((B,)) < word_key((-B,))
