"""Dashed patterns over a ranked alphabet, and the words they are counted in.

A pattern like ``a-cb`` is a sequence of blocks of letters.  Letters inside a
block must match adjacent word positions; a dash allows an arbitrary gap.
Equal pattern letters must match equal word letters, and the rank order of
the letters (a < b < c < ...) must match the value order of the matched word
letters.

Words are plain tuples of positive integers.  An alphabet vector
``m = (m_1, ..., m_n)`` fixes how many copies of each letter a word class
contains; helper functions for content, reversal and complement live here
as well.

The module also implements the per-position weights used by the marked-run
recurrence: ``descent_weight`` counts the occurrences that end in a given
adjacent pair of a concrete word, and ``weight_exponent`` evaluates the same
quantity symbolically from an alphabet vector and a run of distinct letters,
for the twelve pattern shapes that admit such a rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "GeneralizedPattern",
    "PatternClass",
    "StatisticBundle",
    "ParseError",
    "NotAWeightablePattern",
    "PositionNotADescent",
    "PatternNotInTable",
    "InvalidSubset",
    "parse_pattern",
    "parse_word",
    "occurrences",
    "descent_weight",
    "weight_exponent",
    "descent_positions",
    "rise_positions",
    "reverse_word",
    "complement_word",
    "word_content",
]

Word = tuple[int, ...]
AlphabetVector = tuple[int, ...]


class ParseError(ValueError):
    """Pattern or word text that does not match the expected grammar."""


class NotAWeightablePattern(ValueError):
    """Pattern has no adjacent pair to weight positions with."""


class PositionNotADescent(ValueError):
    """Position is not a descent (or rise, for rise-oriented patterns)."""


class PatternNotInTable(ValueError):
    """Pattern has no symbolic weight-exponent rule."""


class InvalidSubset(ValueError):
    """Run subset or factor index outside the recurrence's domain."""


# Block shapes of the twelve patterns with symbolic weight rules.  The first
# group marks descents (its adjacent pair descends), the second marks rises.
_DESCENT_SHAPES = {
    ((2, 1),): "ba",
    ((1,), (3, 2)): "a-cb",
    ((2,), (3, 1)): "b-ca",
    ((3,), (2, 1)): "c-ba",
    ((1,), (2, 1)): "a-ba",
    ((2,), (2, 1)): "b-ba",
}
_RISE_SHAPES = {
    ((1, 2),): "ab",
    ((1,), (2, 3)): "a-bc",
    ((2,), (1, 3)): "b-ac",
    ((3,), (1, 2)): "c-ab",
    ((1,), (1, 2)): "a-ab",
    ((2,), (1, 2)): "b-ab",
}


@dataclass(frozen=True)
class PatternClass:
    """Structural classification of a pattern.

    ``orientation`` is "descent" when the pattern's adjacent pair descends,
    "rise" when it rises, "none" when there is no single adjacent pair.
    ``dash_type`` describes the block shape: "(1,2)", "(2,1)", "adjacent"
    (one block) or "other".  ``boxes`` lists the compatibility boxes the
    pattern belongs to: box 1 holds the descent-marking one-dash shapes,
    box 2 their reversals, box 3 the rise-marking shapes, box 4 their
    reversals.  Only patterns inside a single common box combine into one
    multistatistic recurrence.
    """

    orientation: str
    dash_type: str
    boxes: frozenset[int]


@dataclass(frozen=True)
class GeneralizedPattern:
    """A dashed pattern; ``blocks`` holds letter ranks, 1 = lowest."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.blocks or any(not b for b in self.blocks):
            raise ParseError("pattern must have at least one nonempty block")
        ranks = sorted(set(self.letters))
        if ranks != list(range(1, len(ranks) + 1)):
            raise ParseError(f"pattern ranks must be contiguous from 1, got {ranks}")

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(x for block in self.blocks for x in block)

    @property
    def rank_count(self) -> int:
        return max(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def reverse(self) -> "GeneralizedPattern":
        """Reverse the whole pattern: block order and letters within blocks."""
        return GeneralizedPattern(
            tuple(tuple(reversed(b)) for b in reversed(self.blocks))
        )

    def complement(self) -> "GeneralizedPattern":
        """Flip ranks top-to-bottom within the pattern's own rank set."""
        top = self.rank_count + 1
        return GeneralizedPattern(
            tuple(tuple(top - x for x in b) for b in self.blocks)
        )

    @cached_property
    def classification(self) -> PatternClass:
        pair = None
        lengths = tuple(len(b) for b in self.blocks)
        if lengths == (2,):
            pair = self.blocks[0]
            dash_type = "adjacent"
        elif lengths == (1, 2):
            pair = self.blocks[1]
            dash_type = "(1,2)"
        elif lengths == (2, 1):
            pair = self.blocks[0]
            dash_type = "(2,1)"
        else:
            dash_type = "adjacent" if len(self.blocks) == 1 else "other"
        if pair is None or pair[0] == pair[1]:
            orientation = "none"
        else:
            orientation = "descent" if pair[0] > pair[1] else "rise"

        boxes = set()
        if self.blocks in _DESCENT_SHAPES:
            boxes.add(1)
        if self.blocks in _RISE_SHAPES:
            boxes.add(3)
        rev = tuple(tuple(reversed(b)) for b in reversed(self.blocks))
        if rev in _DESCENT_SHAPES:
            boxes.add(2)
        if rev in _RISE_SHAPES:
            boxes.add(4)
        return PatternClass(orientation, dash_type, frozenset(boxes))

    @property
    def orientation(self) -> str:
        return self.classification.orientation

    @property
    def dash_type(self) -> str:
        return self.classification.dash_type

    @property
    def boxes(self) -> frozenset[int]:
        return self.classification.boxes

    def table_name(self) -> str | None:
        """Name of this pattern's symbolic weight rule, if it has one."""
        return _DESCENT_SHAPES.get(self.blocks) or _RISE_SHAPES.get(self.blocks)

    def __str__(self) -> str:
        return "-".join(
            "".join(chr(ord("a") + x - 1) for x in block) for block in self.blocks
        )

    def __repr__(self) -> str:
        return f"parse_pattern({str(self)!r})"


_PATTERN_RE = re.compile(r"^[a-z]+(-[a-z]+)*$")


def parse_pattern(text: str) -> GeneralizedPattern:
    """Parse pattern text such as ``a-cb`` or ``(ba)``.

    Letters a-z rank alphabetically; single dashes separate blocks; optional
    surrounding parentheses and whitespace are ignored; case-insensitive.
    Letters must be used contiguously from ``a`` (``a-ca`` is rejected
    because ``b`` is skipped).
    """
    cleaned = text.strip().lower()
    if cleaned.startswith("(") and cleaned.endswith(")"):
        cleaned = cleaned[1:-1].strip()
    if not cleaned:
        raise ParseError("empty pattern")
    if not _PATTERN_RE.match(cleaned):
        raise ParseError(f"invalid pattern text: {text!r}")
    blocks = tuple(
        tuple(ord(ch) - ord("a") + 1 for ch in chunk) for chunk in cleaned.split("-")
    )
    return GeneralizedPattern(blocks)


@dataclass(frozen=True)
class StatisticBundle:
    """Patterns bound to distinct polynomial variables.

    The distribution of a bundle assigns each word the monomial
    ``prod_k v_k ** count_k(word)``; a single (pattern, variable) pair is the
    ordinary one-pattern distribution.
    """

    bindings: tuple[tuple[GeneralizedPattern, str], ...]

    def __post_init__(self):
        names = [v for _, v in self.bindings]
        if len(set(names)) != len(names):
            raise ValueError(f"bundle variables must be distinct, got {names}")
        for name in names:
            if not name or not name.replace("_", "a").isalnum() or name[0].isdigit():
                raise ValueError(f"invalid variable name: {name!r}")

    @classmethod
    def single(cls, pattern: GeneralizedPattern, variable: str = "q") -> "StatisticBundle":
        return cls(((pattern, variable),))

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[GeneralizedPattern, str]]
    ) -> "StatisticBundle":
        return cls(tuple(pairs))

    @property
    def patterns(self) -> tuple[GeneralizedPattern, ...]:
        return tuple(p for p, _ in self.bindings)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.bindings)

    def key(self) -> tuple:
        """Hashable identity, usable as a cache key."""
        return tuple((p.blocks, v) for p, v in self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)


# -- word helpers -----------------------------------------------------------


def parse_word(text: str) -> Word:
    """Parse ``2637541`` (digits, letters <= 9) or ``2,6,3,7,5,4,1`` style."""
    cleaned = text.strip()
    if not cleaned:
        raise ParseError("empty word")
    if re.fullmatch(r"[1-9]+", cleaned):
        return tuple(int(ch) for ch in cleaned)
    parts = re.split(r"[,\s]+", cleaned)
    try:
        letters = tuple(int(p) for p in parts if p)
    except ValueError:
        raise ParseError(f"invalid word text: {text!r}") from None
    if not letters or any(x < 1 for x in letters):
        raise ParseError(f"word letters must be positive integers: {text!r}")
    return letters


def reverse_word(word: Sequence[int]) -> Word:
    return tuple(reversed(word))


def complement_word(word: Sequence[int], n: int | None = None) -> Word:
    if n is None:
        n = max(word) if word else 0
    return tuple(n + 1 - x for x in word)


def word_content(word: Sequence[int], n: int | None = None) -> AlphabetVector:
    """Multiplicity vector of a word over the alphabet 1..n."""
    if n is None:
        n = max(word) if word else 0
    counts = [0] * n
    for x in word:
        counts[x - 1] += 1
    return tuple(counts)


def descent_positions(word: Sequence[int]) -> tuple[int, ...]:
    """1-based positions i with word[i] > word[i+1]."""
    return tuple(i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1])


def rise_positions(word: Sequence[int]) -> tuple[int, ...]:
    """1-based positions i with word[i] < word[i+1]."""
    return tuple(i + 1 for i in range(len(word) - 1) if word[i] < word[i + 1])


# -- occurrence counting ----------------------------------------------------


def _consistent(pat: Sequence[int], chosen: list[int], new: Sequence[int]) -> bool:
    """Check the next block's letters against everything already matched."""
    base = len(chosen)
    for off, v in enumerate(new):
        pr = pat[base + off]
        for idx in range(base + off):
            prev_rank = pat[idx]
            prev_val = chosen[idx] if idx < base else new[idx - base]
            if (pr > prev_rank) != (v > prev_val) or (pr == prev_rank) != (v == prev_val):
                return False
    return True


def occurrences(pattern: GeneralizedPattern, word: Sequence[int]) -> int:
    """Number of occurrences of *pattern* in *word*.

    Works for any block structure and length by scanning block placements;
    blocks match contiguous segments, in order, without overlapping.
    """
    w = tuple(word)
    blocks = pattern.blocks
    pat = pattern.letters
    count = 0

    def place(bi: int, min_start: int, chosen: list[int]):
        nonlocal count
        if bi == len(blocks):
            count += 1
            return
        width = len(blocks[bi])
        remaining = sum(len(b) for b in blocks[bi + 1 :])
        for s in range(min_start, len(w) - width - remaining + 1):
            seg = w[s : s + width]
            if _consistent(pat, chosen, seg):
                place(bi + 1, s + width, chosen + list(seg))

    place(0, 0, [])
    return count


def descent_weight(pattern: GeneralizedPattern, word: Sequence[int], i: int) -> int:
    """Occurrences of *pattern* whose final two letters sit at positions i, i+1.

    Positions are 1-based.  The pattern must have a weightable shape (a lone
    adjacent pair, or one letter, dash, adjacent pair); for a descent-oriented
    pattern the position must be a descent, for a rise-oriented one a rise.
    """
    cls = pattern.classification
    if cls.orientation == "none" or cls.dash_type not in ("adjacent", "(1,2)"):
        raise NotAWeightablePattern(f"{pattern} has no position weight")
    w = tuple(word)
    if not 1 <= i <= len(w) - 1:
        raise PositionNotADescent(f"position {i} out of range for length {len(w)}")
    a, b = w[i - 1], w[i]
    if cls.orientation == "descent" and not a > b:
        raise PositionNotADescent(f"position {i} of {w} is not a descent")
    if cls.orientation == "rise" and not a < b:
        raise PositionNotADescent(f"position {i} of {w} is not a rise")
    if cls.dash_type == "adjacent":
        return 1
    pat = pattern.letters
    return sum(
        1
        for j in range(i - 1)
        if _consistent(pat, [], (w[j], a, b))
    )


def weight_exponent(
    pattern: GeneralizedPattern,
    m: Sequence[int],
    T: Iterable[int],
    j: int,
) -> int:
    """Symbolic pair weight for the j-th pair of the run T, in content m.

    ``m`` is the full content of the word *including* the run's letters; T is
    a set of distinct letters of positive multiplicity, identified with its
    descending run t_1 > t_2 > ... (rise-marking patterns traverse the same
    letters ascending, which pairs t_{j+1} before t_j).  The value equals
    ``descent_weight`` at the j-th marked pair for every word of content m
    ending in that run.
    """
    name = pattern.table_name()
    if name is None:
        raise PatternNotInTable(f"{pattern} has no symbolic weight rule")
    given = list(T)
    t = sorted(set(given), reverse=True)
    if not t or len(t) != len(given):
        raise InvalidSubset(f"run letters must be distinct and nonempty: {given!r}")
    n = len(m)
    if t[0] > n or t[-1] < 1 or any(m[x - 1] < 1 for x in t):
        raise InvalidSubset(f"run {t} not inside the support of m={tuple(m)}")
    if not 1 <= j <= len(t) - 1:
        raise InvalidSubset(f"factor index {j} outside 1..{len(t) - 1}")
    hi = t[j - 1]  # t_j   (larger letter of the pair)
    lo = t[j]      # t_{j+1} (smaller letter of the pair)
    size = len(t)
    if name in ("ba", "ab"):
        return 1
    if name == "a-cb":
        return sum(m[: lo - 1]) - size + j + 1
    if name == "a-bc":
        return sum(m[: lo - 1])
    if name in ("b-ca", "b-ac"):
        return sum(m[lo : hi - 1])
    if name == "c-ba":
        return sum(m[hi:])
    if name == "c-ab":
        return sum(m[hi:]) - j + 1
    if name in ("a-ba", "a-ab"):
        return m[lo - 1] - 1
    # b-ba / b-ab
    return m[hi - 1] - 1
