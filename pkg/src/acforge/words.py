"""Free-group words as tuples of signed generator indices.

A letter is a nonzero int: ``+g`` is generator number ``g`` (1-based) and
``-g`` is its inverse.  Powers are expanded, so ``c^3`` is three letters.
Every constructor returns a freely reduced tuple; free reduction is a
normal form, so word equality is plain tuple equality.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


def free_reduce(letters: Iterable[int]) -> Word:
    """Delete adjacent cancelling pairs until none remain.

    The result is independent of deletion order, so a single left-to-right
    stack pass suffices.  Raises ValueError on a zero letter (generator
    indices are nonzero ints).
    """
    out: list[int] = []
    for x in letters:
        if not isinstance(x, int) or x == 0:
            raise ValueError(f"malformed letter {x!r}: letters are nonzero ints")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    """Inverse word: reversed sequence with all signs flipped."""
    return tuple(-x for x in reversed(w))


def concat(u: Sequence[int], v: Sequence[int]) -> Word:
    """Product of two reduced words, cancelling across the seam."""
    stack = list(u)
    i = 0
    nv = len(v)
    while stack and i < nv and stack[-1] == -v[i]:
        stack.pop()
        i += 1
    return tuple(stack) + tuple(v[i:])


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Split ``w = conjugator . core . conjugator^-1`` with the core cyclically reduced.

    Returns ``(core, conjugator)``; both are freely reduced and the core's
    first and last letters do not cancel.
    """
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j], w[:i]


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w[0] != -w[-1]


def rotate(w: Word, k: int) -> Word:
    """Raw cyclic rotation by ``k`` positions (no free reduction)."""
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


def exponent_vector(w: Sequence[int], n_gens: int) -> Tuple[int, ...]:
    """Signed occurrence count of each generator, as a length-``n_gens`` tuple."""
    vec = [0] * n_gens
    for x in w:
        g = abs(x)
        if g > n_gens:
            raise ValueError(f"letter {x} out of range for {n_gens} generator(s)")
        vec[g - 1] += 1 if x > 0 else -1
    return tuple(vec)


def word_key(w: Sequence[int]) -> Tuple[Tuple[int, bool], ...]:
    """Sort key ordering letters a < a^-1 < b < b^-1 < ...; use for any
    lexicographic comparison of words."""
    return tuple((abs(x), x < 0) for x in w)
