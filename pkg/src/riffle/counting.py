"""Descent-set enumeration on S_n: closed formulas next to brute force.

Descent sets follow the package convention of always containing n.  The
Stanley-style entry points (``count_descent_det``) instead take a subset of
{1..n-1} and append n internally; both are exposed so each formula can be
exercised in its native indexing.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from itertools import combinations

from .necklaces import _mobius, primitive_count
from .permutations import (
    Permutation,
    descent_composition,
    symmetric_group_list,
)

DEFAULT_MAX_N = 8


def _comb0(m: int, k: int) -> int:
    """Binomial coefficient that is 0 outside 0 <= k <= m."""
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)


def multinomial(parts: Iterable[int]) -> int:
    parts = tuple(parts)
    out = math.factorial(sum(parts))
    for b in parts:
        out //= math.factorial(b)
    return out


def int_det(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    Bareiss' algorithm: every intermediate quantity stays an integer, so
    there is no rational blowup on the big binomial entries.
    """
    m = [row[:] for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, size):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1] if size else 1


def brute_count(
    n: int, predicate: Callable[[Permutation], bool], *, max_n: int = DEFAULT_MAX_N
) -> int:
    """Count permutations in S_n satisfying a predicate, by full iteration."""
    if n > max_n:
        raise ValueError(f"n={n} above enumeration cap {max_n}")
    return sum(1 for p in symmetric_group_list(n) if predicate(p))


def _validate_descent_set(n: int, deset: Iterable[int]) -> frozenset[int]:
    js = frozenset(deset)
    if n not in js:
        raise ValueError(f"descent set must contain n={n}: {sorted(js)}")
    if not js <= set(range(1, n + 1)):
        raise ValueError(f"descent set not within 1..{n}: {sorted(js)}")
    return js


def count_descent_subset(parts: Iterable[int]) -> int:
    """Permutations with descent set contained in the partial sums of
    ``parts``: the multinomial coefficient n!/(b1!...ba!)."""
    return multinomial(parts)


def count_descent_exact(n: int, deset: Iterable[int]) -> int:
    """Permutations of S_n with descent set exactly ``deset`` (which must
    contain n), by inclusion-exclusion over subsets:

        sum_{K subseteq J, n in K} (-1)^(|J|-|K|) multinomial(C(K))
    """
    js = _validate_descent_set(n, deset)
    inner = sorted(js - {n})
    total = 0
    for r in range(len(inner) + 1):
        for chosen in combinations(inner, r):
            k = set(chosen) | {n}
            total += (-1) ** (len(js) - len(k)) * multinomial(descent_composition(k, n))
    return total


def count_descent_det(n: int, j_positions: Iterable[int]) -> int:
    """Same count in Stanley's indexing: ``j_positions`` lies in {1..n-1}.

    Builds the (k+1) x (k+1) matrix with entries C(n - j_l, j_{m+1} - j_l)
    for j_0 = 0 and j_{k+1} = n, and takes its exact determinant.
    """
    js = sorted(j_positions)
    if any(j < 1 or j > n - 1 for j in js):
        raise ValueError(f"positions must lie in 1..{n - 1}: {js}")
    pts = [0] + js + [n]
    size = len(js) + 1
    matrix = [
        [_comb0(n - pts[l], pts[m + 1] - pts[l]) for m in range(size)]
        for l in range(size)
    ]
    return int_det(matrix)


def ncycles_descent_ie(n: int, deset: Iterable[int]) -> int:
    """n-cycles with descent set exactly ``deset``, by inclusion-exclusion
    with the primitive-necklace count in place of the multinomial."""
    js = _validate_descent_set(n, deset)
    inner = sorted(js - {n})
    total = 0
    for r in range(len(inner) + 1):
        for chosen in combinations(inner, r):
            k = set(chosen) | {n}
            total += (-1) ** (len(js) - len(k)) * primitive_count(
                descent_composition(k, n)
            )
    return total


def ncycles_descent_det(n: int, deset: Iterable[int]) -> int:
    """n-cycles with descent set exactly ``deset``, by the divisor sum

        (1/n) sum_{d | n} mu(d) (-1)^(|J| - |J_d|) det C((n - j_l)/d, (j_{m+1} - j_l)/d)

    where J is the descent set without n and J_d keeps its multiples of d.
    Raises ArithmeticError if the divisor sum is not divisible by n, which
    would indicate a bug rather than bad input.
    """
    js = _validate_descent_set(n, deset)
    inner = sorted(js - {n})
    total = 0
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(d)
        if mu == 0:
            continue
        jd = [j for j in inner if j % d == 0]
        pts = [0] + jd + [n]
        size = len(jd) + 1
        matrix = [
            [_comb0((n - pts[l]) // d, (pts[m + 1] - pts[l]) // d) for m in range(size)]
            for l in range(size)
        ]
        total += mu * (-1) ** (len(inner) - len(jd)) * int_det(matrix)
    if total % n:
        raise ArithmeticError(f"divisor sum {total} not divisible by n={n}")
    return total // n


def count_symmetric_matrices(row_sums: Iterable[int]) -> int:
    """Symmetric r x r matrices with non-negative integer entries and the
    given row sums, counted by filling the upper triangle row by row."""
    sums = tuple(row_sums)
    r = len(sums)
    if any(s < 0 for s in sums):
        raise ValueError(f"negative row sum in {sums}")

    def fill(row: int, lower_contrib: list[int]) -> int:
        if row == r:
            return 1
        budget = sums[row] - lower_contrib[row]
        if budget < 0:
            return 0
        total = 0
        free = r - row  # entries X[row][row..r-1]

        def spread(col: int, left: int):
            nonlocal total
            if col == r:
                if left == 0:
                    total += fill(row + 1, lower_contrib)
                return
            upper = left
            for value in range(upper + 1):
                if col > row:
                    lower_contrib[col] += value
                spread(col + 1, left - value)
                if col > row:
                    lower_contrib[col] -= value

        spread(row, budget)
        return total

    return fill(0, [0] * r)


def involutions_descent_subset(n: int, kset: Iterable[int]) -> int:
    """Involutions of S_n with descent set contained in ``kset`` (which must
    contain n), counted as symmetric matrices with row sums given by the
    gap composition of ``kset``."""
    ks = _validate_descent_set(n, kset)
    return count_symmetric_matrices(descent_composition(ks, n))
