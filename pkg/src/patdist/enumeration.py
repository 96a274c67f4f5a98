"""Exhaustive enumeration of multiset permutations and brute-force distributions.

This is the universal oracle: it works for any bundle of patterns with no
compatibility restriction, at the price of visiting every word of the class.
"""

from __future__ import annotations

from math import factorial
from typing import Iterator, Sequence

from .patterns import StatisticBundle, Word, occurrences
from .poly import Monomial, Poly

__all__ = ["multiset_permutations", "class_size", "bf_distribution"]


def class_size(m: Sequence[int]) -> int:
    """Number of words with content m: (sum m)! / prod m_i!."""
    total = factorial(sum(m))
    for x in m:
        total //= factorial(x)
    return total


def multiset_permutations(m: Sequence[int]) -> Iterator[Word]:
    """Yield every word with content m exactly once, lexicographically.

    Entries of m may be zero; the corresponding letters simply never appear.
    Uses the in-place next-permutation step, so memory stays constant per word.
    """
    if any(x < 0 for x in m):
        raise ValueError(f"multiplicities must be nonnegative: {tuple(m)}")
    word = [letter for letter, count in enumerate(m, start=1) for _ in range(count)]
    if not word:
        yield ()
        return
    while True:
        yield tuple(word)
        # Find the rightmost ascent, swap with the smallest larger suffix
        # letter, reverse the tail.  Ends when the word is fully descending.
        i = len(word) - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(word) - 1
        while word[j] <= word[i]:
            j -= 1
        word[i], word[j] = word[j], word[i]
        word[i + 1 :] = reversed(word[i + 1 :])


def bf_distribution(bundle: StatisticBundle, m: Sequence[int]) -> Poly:
    """Sum over all words of content m of prod_k v_k ** count_k(word)."""
    pairs = sorted(((v, p) for p, v in bundle.bindings), key=lambda x: x[0])
    table: dict[Monomial, int] = {}
    for word in multiset_permutations(m):
        exps = tuple(
            (v, e) for v, p in pairs if (e := occurrences(p, word)) != 0
        )
        table[exps] = table.get(exps, 0) + 1
    return Poly._raw(table)
