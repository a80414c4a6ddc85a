"""Permutations of {1..n} in one-line form, with exact statistics.

Conventions used throughout the package:

- Positions and card labels are 1-based.  A permutation is stored as the
  tuple ``(pi(1), ..., pi(n))``; read as a deck of cards, ``pi(i)`` is the
  label of the card sitting at position ``i``.
- Every permutation has a descent at position ``n`` by convention, so
  ``descent_set`` always contains ``n``.
- Composition ``(p * q)(i) == p(q(i))``, i.e. ``q`` acts first.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from functools import lru_cache


class Permutation:
    """An element of S_n, immutable and hashable.

    >>> p = Permutation([2, 3, 1])
    >>> p(1), p(3)
    (2, 1)
    >>> p.inverse()
    Permutation([3, 1, 2])
    >>> p * p.inverse() == Permutation.identity(3)
    True
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs!r}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        """Build from disjoint cycles; omitted elements are fixed points.

        >>> Permutation.from_cycles(3, [(2, 3)])
        Permutation([1, 3, 2])
        """
        images = list(range(1, n + 1))
        for cycle in cycles:
            cyc = tuple(cycle)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def invert(p: Permutation) -> Permutation:
    """Group inverse of ``p``."""
    return p.inverse()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``: (p∘q)(i) = p(q(i))."""
    return p * q


def descent_set(p: Permutation) -> frozenset[int]:
    """Positions i with p(i) > p(i+1), plus n (always a descent).

    >>> sorted(descent_set(Permutation([2, 1, 3])))
    [1, 3]
    """
    imgs = p.images
    n = len(imgs)
    if n == 0:
        return frozenset()
    des = {i + 1 for i in range(n - 1) if imgs[i] > imgs[i + 1]}
    des.add(n)
    return frozenset(des)


def inversions(p: Permutation) -> int:
    """Number of pairs i < j with p(i) > p(j); invariant under inverse."""
    return count_inversions(p.images)


def count_inversions(seq) -> int:
    """Inversion count of an integer sequence by merge counting, O(n log n).

    >>> count_inversions((3, 1, 2))
    2
    """
    seq = list(seq)
    if len(seq) < 2:
        return 0

    def merge_count(lo: int, hi: int) -> int:
        if hi - lo < 2:
            return 0
        mid = (lo + hi) // 2
        count = merge_count(lo, mid) + merge_count(mid, hi)
        merged = []
        i, j = lo, mid
        while i < mid and j < hi:
            if seq[j] < seq[i]:
                count += mid - i
                merged.append(seq[j])
                j += 1
            else:
                merged.append(seq[i])
                i += 1
        merged.extend(seq[i:mid])
        merged.extend(seq[j:hi])
        seq[lo:hi] = merged
        return count

    return merge_count(0, len(seq))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``p``, each starting at its smallest element and
    following i -> p(i); cycles ordered by smallest element.

    >>> cycles(Permutation([3, 4, 1, 2, 5]))
    [(1, 3), (2, 4), (5,)]
    """
    seen = [False] * p.n
    out = []
    for start in range(1, p.n + 1):
        if seen[start - 1]:
            continue
        cyc = []
        i = start
        while not seen[i - 1]:
            seen[i - 1] = True
            cyc.append(i)
            i = p(i)
        out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> dict[int, int]:
    """Map cycle length -> number of cycles of that length.

    >>> cycle_type(Permutation([2, 3, 1])) == {3: 1}
    True
    """
    counts: dict[int, int] = {}
    for cyc in cycles(p):
        counts[len(cyc)] = counts.get(len(cyc), 0) + 1
    return counts


def cycle_type_key(counts: dict[int, int]) -> tuple[tuple[int, int], ...]:
    """Canonical hashable form of a cycle type: sorted (length, count) pairs."""
    return tuple(sorted((i, c) for i, c in counts.items() if c))


def is_involution(p: Permutation) -> bool:
    return all(p(p(i)) == i for i in range(1, p.n + 1))


def is_n_cycle(p: Permutation) -> bool:
    if p.n == 0:
        return False
    length, i = 1, p(1)
    while i != 1:
        i = p(i)
        length += 1
    return length == p.n


def symmetric_group(n: int) -> Iterator[Permutation]:
    """Iterate all of S_n (n! elements; S_0 is the single empty permutation)."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


@lru_cache(maxsize=8)
def symmetric_group_list(n: int) -> tuple[Permutation, ...]:
    """Cached tuple of S_n, for repeated brute-force passes."""
    if n > 9:
        raise ValueError(f"refusing to cache S_{n}")
    return tuple(symmetric_group(n))


# --- compositions and descent sets -------------------------------------

def partial_sums(parts: Iterable[int]) -> tuple[int, ...]:
    """Running totals of a composition: (b1, b1+b2, ...)."""
    out, total = [], 0
    for b in parts:
        total += b
        out.append(total)
    return tuple(out)


def descent_composition(deset: Iterable[int], n: int) -> tuple[int, ...]:
    """Gap sequence of a descent set containing n.

    >>> descent_composition({2, 8, 12}, 12)
    (2, 6, 4)
    """
    js = sorted(deset)
    if not js or js[-1] != n:
        raise ValueError(f"descent set must contain n={n}: {js}")
    prev, parts = 0, []
    for j in js:
        parts.append(j - prev)
        prev = j
    return tuple(parts)


def weak_compositions(n: int, num_parts: int) -> Iterator[tuple[int, ...]]:
    """All (b1..ba) with bi >= 0 summing to n; zero parts allowed."""
    if num_parts == 0:
        if n == 0:
            yield ()
        return
    if num_parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in weak_compositions(n - first, num_parts - 1):
            yield (first,) + rest


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All compositions of n into positive parts (2^(n-1) of them)."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


if __name__ == "__main__":
    import doctest

    doctest.testmod()
