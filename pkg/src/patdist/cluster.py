"""Marked-run recurrence for pattern distributions over multiset permutations.

The distribution of a bundle over the words of content m satisfies

    F(m) = sum over nonempty letter subsets T of support(m) of
           [ prod_{j=1}^{|T|-1} (prod_k v_k ** e_k(m, T, j)  -  1) ]
           * F(m - 1_T)

where e_k is the symbolic pair weight of pattern k (``weight_exponent``),
evaluated at the full content m, and 1_T removes one copy of each letter of
T.  Deleting zero entries of m and relabelling does not change the
distribution, so states are normalized vectors and the empty vector has
value 1.  Each multistatistic factor couples all variables inside a single
``(monomial - 1)``, which is what makes joint distributions exact.

The recurrence applies only to bundles whose patterns share a compatibility
box; type-(2,1) patterns are evaluated by reversing every pattern in the
bundle, since reversal is a content-preserving bijection on each word class.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .patterns import (
    AlphabetVector,
    GeneralizedPattern,
    StatisticBundle,
    weight_exponent,
)
from .poly import Poly

__all__ = [
    "IncompatibleBundle",
    "MemoTable",
    "normalize_alphabet",
    "compatibility_check",
    "cluster_distribution",
]

# Box ids: 1 descent-marking one-dash shapes, 2 their reversals,
#          3 rise-marking shapes, 4 their reversals.
_BOX_PREFERENCE = (1, 3, 2, 4)


class IncompatibleBundle(ValueError):
    """Patterns do not share a compatibility box."""


def normalize_alphabet(m: Sequence[int]) -> AlphabetVector:
    """Drop zero multiplicities and relabel letters consecutively."""
    if any(x < 0 for x in m):
        raise ValueError(f"multiplicities must be nonnegative: {tuple(m)}")
    return tuple(x for x in m if x)


def compatibility_check(bundle: StatisticBundle) -> int:
    """Return the unique box shared by all patterns of the bundle.

    Patterns living in two boxes (the lone adjacent pairs) resolve to the
    most direct shared box.  Raises :class:`IncompatibleBundle` when no
    common box exists, e.g. when mixing descent- and rise-marking patterns.
    """
    common = {1, 2, 3, 4}
    for p in bundle.patterns:
        common &= p.boxes
    for box in _BOX_PREFERENCE:
        if box in common:
            return box
    raise IncompatibleBundle(
        "patterns do not share a compatibility box: "
        + ", ".join(str(p) for p in bundle.patterns)
    )


class MemoTable:
    """Cache of computed distributions, keyed by normalized alphabet vector.

    A table belongs to one bundle; reusing it across calls lets a
    long-running process amortize shared subproblems.  Entries are immutable
    polynomials, so concurrent duplicate computation is harmless.
    """

    def __init__(self):
        self._table: dict[AlphabetVector, Poly] = {(): Poly.one()}

    def __contains__(self, key: AlphabetVector) -> bool:
        return key in self._table

    def __getitem__(self, key: AlphabetVector) -> Poly:
        return self._table[key]

    def __setitem__(self, key: AlphabetVector, value: Poly) -> None:
        self._table[key] = value

    def __len__(self) -> int:
        return len(self._table)


def _reduce_bundle(bundle: StatisticBundle) -> StatisticBundle:
    """Map a box-2/4 bundle through reversal so every pattern has a rule."""
    box = compatibility_check(bundle)
    if box in (2, 4):
        return StatisticBundle(
            tuple((p.reverse(), v) for p, v in bundle.bindings)
        )
    return bundle


def _factor(
    bindings: tuple[tuple[GeneralizedPattern, str], ...],
    m: AlphabetVector,
    run: tuple[int, ...],
    j: int,
) -> Poly:
    """The j-th factor for run T at content m: (prod_k v_k^{e_k} - 1)."""
    exponents = {}
    for p, v in bindings:
        e = weight_exponent(p, m, run, j)
        if e:
            exponents[v] = exponents.get(v, 0) + e
    return Poly.monomial(exponents) - 1


def _state_value(
    bindings: tuple[tuple[GeneralizedPattern, str], ...],
    m: AlphabetVector,
    child: Callable[[AlphabetVector], Poly],
) -> Poly:
    """Apply one step of the recurrence at a normalized, all-positive m."""
    n = len(m)
    total = Poly.zero()
    for mask in range(1, 1 << n):
        run = tuple(x for x in range(n, 0, -1) if mask & (1 << (x - 1)))
        weight = Poly.one()
        for j in range(1, len(run)):
            weight = weight * _factor(bindings, m, run, j)
            if not weight:
                break
        if not weight:
            continue
        shrunk = normalize_alphabet(
            tuple(x - 1 if (i + 1) in run else x for i, x in enumerate(m))
        )
        total = total + weight * child(shrunk)
    return total


def cluster_distribution(
    bundle: StatisticBundle,
    m: Sequence[int],
    *,
    memo: MemoTable | None = None,
    use_memo: bool = True,
) -> Poly:
    """Distribution of *bundle* over the words of content m via the recurrence.

    ``memo`` may carry a table across calls for the same bundle; with
    ``use_memo=False`` every subproblem is recomputed (exponential; meant for
    small cross-checks of memo transparency).
    """
    reduced = _reduce_bundle(bundle)
    bindings = reduced.bindings
    start = normalize_alphabet(m)

    if not use_memo:
        def eval_plain(state: AlphabetVector) -> Poly:
            if not state:
                return Poly.one()
            return _state_value(bindings, state, eval_plain)

        return eval_plain(start)

    table = memo if memo is not None else MemoTable()

    # Discover reachable states, then fill bottom-up by total size so no
    # evaluation recurses; the run always removes at least one letter.
    pending: list[AlphabetVector] = []
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        if state in table:
            continue
        pending.append(state)
        n = len(state)
        for mask in range(1, 1 << n):
            child = normalize_alphabet(
                tuple(
                    x - 1 if mask & (1 << i) else x for i, x in enumerate(state)
                )
            )
            if child not in seen:
                seen.add(child)
                stack.append(child)

    pending.sort(key=sum)
    for state in pending:
        table[state] = _state_value(bindings, state, table.__getitem__)
    return table[start]
