"""Words, standardization, and the Gessel-Reutenauer necklace bijection.

Words are tuples over the ordered alphabet {1..a}.  A necklace is a word up
to cyclic rotation, stored canonically as its lexicographically minimal
rotation; a necklace is primitive when no nontrivial rotation fixes it.
Multisets of necklaces are ``collections.Counter`` instances keyed by
canonical tuples.

Standardizing a word and decomposing the resulting permutation into cycles
turns every word into a multiset of necklaces with the same cycle
structure.  Restricted to words of fixed letter content, the map is a
bijection onto multisets of *primitive* necklaces with that content, which
is what makes the shuffle-measure cycle counting work.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable
from functools import lru_cache

from .permutations import Permutation, cycles, descent_set, partial_sums

DEFAULT_MAX_N = 16

Word = tuple[int, ...]
Necklace = tuple[int, ...]
NecklaceMultiset = Counter  # Counter[Necklace]


def standardize(word: Iterable[int]) -> Permutation:
    """Standard permutation of a word: lexicographic ranks, ties to the left.

    >>> standardize((2, 2, 1, 1, 2, 3, 3, 3, 2, 3, 2, 2)).images
    (3, 4, 1, 2, 5, 9, 10, 11, 6, 12, 7, 8)
    """
    word = tuple(word)
    if not word:
        raise ValueError("empty word")
    order = sorted(range(len(word)), key=lambda j: (word[j], j))
    ranks = [0] * len(word)
    for rank, j in enumerate(order, start=1):
        ranks[j] = rank
    return Permutation(ranks)


def min_rotation(seq: Iterable[int]) -> Necklace:
    """Canonical form of a cyclic word: its lexicographically least rotation."""
    seq = tuple(seq)
    if not seq:
        raise ValueError("empty necklace")
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def is_primitive(necklace: Iterable[int]) -> bool:
    """True iff no nontrivial rotation fixes the necklace.

    >>> is_primitive((1, 1, 2, 2)), is_primitive((1, 2, 1, 2))
    (True, False)
    """
    seq = tuple(necklace)
    n = len(seq)
    for period in range(1, n):
        if n % period == 0 and seq == seq[period:] + seq[:period]:
            return False
    return True


def necklace_decomposition(word: Iterable[int]) -> NecklaceMultiset:
    """Multiset of necklaces obtained by reading the word's letters around
    each cycle of its standard permutation.

    Cycles are traversed following i -> st(i), and each necklace is stored
    in canonical (minimal-rotation) form.  The multiset of necklace lengths
    always equals the cycle type of ``standardize(word)``.
    """
    word = tuple(word)
    st = standardize(word)
    out: NecklaceMultiset = Counter()
    for cyc in cycles(st):
        out[min_rotation(word[j - 1] for j in cyc)] += 1
    return out


def word_from_permutation(perm: Permutation, parts: Iterable[int]) -> Word:
    """The unique word with parts[i-1] copies of letter i standardizing to ``perm``.

    Exists iff the descent set of perm^{-1} is contained in the partial
    sums of ``parts``; the letter at position j is the block of perm(j)
    among those partial sums.

    >>> word_from_permutation(Permutation([2, 3, 1]), (1, 2))
    (2, 2, 1)
    """
    parts = tuple(parts)
    psums = partial_sums(parts)
    if perm.n != (psums[-1] if psums else 0):
        raise ValueError(f"parts {parts} do not sum to n={perm.n}")
    allowed = set(psums) | {perm.n}
    bad = descent_set(perm.inverse()) - allowed
    if bad:
        raise ValueError(
            f"no word with content {parts} standardizes to {perm}: "
            f"inverse descent at {sorted(bad)}"
        )
    word = []
    for j in range(1, perm.n + 1):
        value = perm(j)
        block = next(i for i, b in enumerate(psums, start=1) if value <= b)
        word.append(block)
    return tuple(word)


def ubar_forward(perm: Permutation, parts: Iterable[int]) -> NecklaceMultiset:
    """Necklace multiset of the unique content-``parts`` word standardizing
    to ``perm``.

    Restricted to permutations whose *inverse* descent set lies in the
    partial sums of ``parts`` (the condition under which the word exists),
    this is a cycle-structure preserving bijection onto multisets of
    primitive necklaces with parts[i-1] copies of letter i.
    """
    return necklace_decomposition(word_from_permutation(perm, parts))


# --- primitive necklace counting and enumeration ------------------------

def _mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def primitive_count(parts: Iterable[int]) -> int:
    """Number of primitive necklaces with parts[i-1] copies of letter i.

    Moebius inversion over the common divisors of the letter counts:
    (1/n) sum_{d | gcd} mu(d) * (n/d)! / prod (r_i/d)!.

    >>> primitive_count((2, 2)), primitive_count((1, 1, 1))
    (1, 2)
    """
    parts = tuple(parts)
    if any(r < 0 for r in parts):
        raise ValueError(f"negative letter count in {parts}")
    n = sum(parts)
    if n == 0:
        raise ValueError("all letter counts are zero")
    total = 0
    g = math.gcd(*parts)
    for d in range(1, g + 1):
        if g % d:
            continue
        mu = _mobius(d)
        if mu == 0:
            continue
        term = math.factorial(n // d)
        for r in parts:
            term //= math.factorial(r // d)
        total += mu * term
    assert total % n == 0
    return total // n


def enumerate_primitive_necklaces(
    parts: Iterable[int], *, max_n: int = DEFAULT_MAX_N
) -> list[Necklace]:
    """All primitive necklaces with the given letter content, canonical and
    sorted; the brute-force counterpart of ``primitive_count``.
    """
    parts = tuple(parts)
    n = sum(parts)
    if n > max_n:
        raise ValueError(f"content size {n} above enumeration cap {max_n}")
    if n == 0:
        raise ValueError("all letter counts are zero")
    found: set[Necklace] = set()

    counts = list(parts)

    def extend(prefix: list[int]):
        if len(prefix) == n:
            canon = min_rotation(prefix)
            if tuple(prefix) == canon and is_primitive(canon):
                found.add(canon)
            return
        for letter in range(1, len(counts) + 1):
            if counts[letter - 1] == 0:
                continue
            counts[letter - 1] -= 1
            prefix.append(letter)
            extend(prefix)
            prefix.pop()
            counts[letter - 1] += 1

    extend([])
    return sorted(found)


@lru_cache(maxsize=None)
def _necklaces_below(parts: tuple[int, ...]) -> tuple[Necklace, ...]:
    """All primitive necklaces whose content fits inside ``parts``."""
    ranges = [range(r + 1) for r in parts]
    out: set[Necklace] = set()
    import itertools

    for content in itertools.product(*ranges):
        if sum(content) == 0:
            continue
        out.update(enumerate_primitive_necklaces(content))
    return tuple(sorted(out))


def enumerate_primitive_multisets(parts: Iterable[int]) -> list[NecklaceMultiset]:
    """All multisets of primitive necklaces with combined letter content
    exactly ``parts``.  Small-scale oracle for the bijection.
    """
    parts = tuple(parts)
    candidates = _necklaces_below(parts)

    def content_of(neck: Necklace) -> tuple[int, ...]:
        c = [0] * len(parts)
        for letter in neck:
            c[letter - 1] += 1
        return tuple(c)

    contents = [content_of(neck) for neck in candidates]
    results: list[NecklaceMultiset] = []
    chosen: NecklaceMultiset = Counter()

    def pick(idx: int, remaining: tuple[int, ...]):
        if not any(remaining):
            results.append(chosen.copy())
            return
        if idx == len(candidates):
            return
        neck_content = contents[idx]
        mult = 0
        rem = remaining
        while True:
            pick(idx + 1, rem)
            if any(r < c for r, c in zip(rem, neck_content)):
                break
            rem = tuple(r - c for r, c in zip(rem, neck_content))
            mult += 1
            chosen[candidates[idx]] = mult
        if mult:
            del chosen[candidates[idx]]

    pick(0, parts)
    return results


def multiset_key(multiset: NecklaceMultiset) -> tuple[tuple[Necklace, int], ...]:
    """Hashable canonical form of a necklace multiset."""
    return tuple(sorted((neck, m) for neck, m in multiset.items() if m))


def length_multiset(multiset: NecklaceMultiset) -> dict[int, int]:
    """Necklace lengths with multiplicity; comparable to a cycle type."""
    out: dict[int, int] = {}
    for neck, m in multiset.items():
        out[len(neck)] = out.get(len(neck), 0) + m
    return out


def letters(necklace: Iterable[int]) -> str:
    """Render small alphabets as letters for display: (1, 2) -> 'ab'."""
    return "".join(chr(ord("a") + x - 1) if 1 <= x <= 26 else f"<{x}>" for x in necklace)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
