"""Cycle, fixed-point, inversion, and descent statistics of biased shuffles.

Everything here is exact: probability generating functions are expanded as
truncated series with Fraction coefficients, and moments at q = 1 or x = 1
are formal polynomial derivatives, never finite differences.  Each closed
form has a companion that reads the same statistic off an exact
distribution, so the two can be compared coefficient by coefficient.

Statistics of k repeated shuffles are obtained by tensoring the bias
vector (a k-fold shuffle is a single a^k-shuffle), which keeps them
available beyond the S_n enumeration cap.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

from .necklaces import primitive_count
from .permutations import (
    cycle_type,
    cycle_type_key,
    descent_set,
    inversions,
    partial_sums,
    symmetric_group_list,
    weak_compositions,
)
from .qpoly import QPolynomial, q_binomial, q_multinomial
from .shuffles import ExactDistribution, ShuffleSpec, validate_bias

DEFAULT_MAX_N = 8

CycleTypeKey = tuple[tuple[int, int], ...]


class CyclePolynomial:
    """Joint probability generating function of the cycle counts N_1..N_n.

    ``terms`` maps a canonical cycle-type key ((length, count), ...) to the
    probability of that cycle type; the coefficients are non-negative and
    sum to 1.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[CycleTypeKey, Fraction]):
        clean = {key: Fraction(c) for key, c in terms.items() if c}
        if any(c < 0 for c in clean.values()):
            raise ValueError("negative coefficient")
        for key in clean:
            if sum(length * count for length, count in key) != n:
                raise ValueError(f"cycle type {key} does not weigh n={n}")
        if sum(clean.values()) != 1:
            raise ValueError("coefficients do not sum to 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def coefficient(self, counts: dict[int, int]) -> Fraction:
        """Probability of the cycle type given as {length: count}."""
        return self.terms.get(cycle_type_key(counts), Fraction(0))

    def expected_count(self, length: int) -> Fraction:
        """E[N_length], read off the coefficients."""
        total = Fraction(0)
        for key, c in self.terms.items():
            for clen, count in key:
                if clen == length:
                    total += c * count
        return total

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclePolynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"CyclePolynomial(n={self.n}, types={len(self.terms)})"

    def __setattr__(self, name, value):
        raise AttributeError("CyclePolynomial is immutable")


def cycle_structure_pgf(n: int, bias, *, max_n: int = DEFAULT_MAX_N) -> CyclePolynomial:
    """Expand the product formula for the joint cycle-count PGF to order n.

    The generating function over all deck sizes is a product, over cycle
    lengths i and letter contents r of size i, of geometric factors

        (1 - p^r u^i x_i) ^ (-M(r))

    with M(r) the primitive-necklace count of content r.  Collecting the
    u^n coefficient by dynamic programming over the factors gives the PGF
    of the n-card shuffle.
    """
    bias = validate_bias(bias)
    if n > max_n:
        raise ValueError(f"n={n} above series cap {max_n}")
    a = len(bias)

    # state: (u-degree, cycle-type counter as sorted tuple) -> coefficient
    state: dict[tuple[int, CycleTypeKey], Fraction] = {(0, ()): Fraction(1)}
    for i in range(1, n + 1):
        for content in weak_compositions(i, a):
            weight = Fraction(1)
            for p, r in zip(bias, content):
                if r:
                    weight *= p ** r
            if weight == 0:
                continue
            mult = primitive_count(content)
            if mult == 0:
                continue
            new_state = dict(state)
            for (deg, key), coeff in state.items():
                room = (n - deg) // i
                power = Fraction(1)
                for m in range(1, room + 1):
                    power *= weight
                    bump = coeff * math.comb(mult + m - 1, m) * power
                    new_key = _add_cycles(key, i, m)
                    slot = (deg + i * m, new_key)
                    new_state[slot] = new_state.get(slot, Fraction(0)) + bump
            state = new_state

    terms = {key: c for (deg, key), c in state.items() if deg == n}
    return CyclePolynomial(n, terms)


def _add_cycles(key: CycleTypeKey, length: int, count: int) -> CycleTypeKey:
    counts = dict(key)
    counts[length] = counts.get(length, 0) + count
    return tuple(sorted(counts.items()))


def cycle_pgf_from_distribution(dist: ExactDistribution) -> CyclePolynomial:
    """The same joint PGF read directly off an exact distribution."""
    terms: dict[CycleTypeKey, Fraction] = {}
    for perm in symmetric_group_list(dist.n):
        mass = dist.mass(perm)
        if mass == 0:
            continue
        key = cycle_type_key(cycle_type(perm))
        terms[key] = terms.get(key, Fraction(0)) + mass
    return CyclePolynomial(dist.n, terms)


def expected_fixed_points(spec: ShuffleSpec) -> Fraction:
    """Exact expected number of fixed points after k biased shuffles:

        sum_{j=1..n} (p_1^j + ... + p_a^j)^k
    """
    total = Fraction(0)
    for j in range(1, spec.n + 1):
        total += sum(p ** j for p in spec.bias) ** spec.k
    return total


def fixed_point_pgf(n: int, bias, *, max_n: int = DEFAULT_MAX_N) -> tuple[Fraction, ...]:
    """PGF of the fixed-point count after one shuffle, as coefficients in x.

    Extracts the y^n coefficient of

        1/(1-y) * prod_i (1 - p_i y) / (1 - p_i x y)

    by truncated series arithmetic; entry m of the result is P(N_1 = m).
    """
    bias = validate_bias(bias)
    if n > max_n:
        raise ValueError(f"n={n} above series cap {max_n}")
    # series[m] = coefficient of y^m, itself a dense list of x-coefficients
    series: list[list[Fraction]] = [[Fraction(1)] for _ in range(n + 1)]
    for p in bias:
        # multiply by (1 - p y)
        series = [
            _poly_sub(series[m], _poly_scale(series[m - 1], p)) if m else series[m][:]
            for m in range(n + 1)
        ]
        # multiply by sum_m (p x)^m y^m
        new_series: list[list[Fraction]] = []
        for m in range(n + 1):
            acc: list[Fraction] = []
            power = Fraction(1)
            for m1 in range(m + 1):
                shifted = [Fraction(0)] * m1 + _poly_scale(series[m - m1], power)
                acc = _poly_add(acc, shifted)
                power *= p
            new_series.append(acc)
        series = new_series
    coeffs = series[n] + [Fraction(0)] * (n + 1 - len(series[n]))
    return tuple(coeffs[: n + 1])


def _poly_add(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    return _poly_add(a, [-c for c in b])


def _poly_scale(a: list[Fraction], s: Fraction) -> list[Fraction]:
    return [c * s for c in a]


def fixed_point_pgf_from_distribution(dist: ExactDistribution) -> tuple[Fraction, ...]:
    coeffs = [Fraction(0)] * (dist.n + 1)
    for perm in symmetric_group_list(dist.n):
        mass = dist.mass(perm)
        if mass:
            fixed = sum(1 for i in range(1, dist.n + 1) if perm(i) == i)
            coeffs[fixed] += mass
    return tuple(coeffs)


def inversion_pgf(n: int, bias, *, max_n: int = DEFAULT_MAX_N) -> QPolynomial:
    """E q^Inv after one shuffle, by coefficient extraction from the
    q-exponential product

        prod_i  sum_j (u p_i)^j / [j]!

    The series is convolved with coefficients kept over the implicit
    denominator [j]!, so each convolution step only needs q-binomials and
    the u^n coefficient comes out already multiplied by [n]!.
    """
    bias = validate_bias(bias)
    if n > max_n:
        raise ValueError(f"n={n} above series cap {max_n}")
    coeffs: list[QPolynomial] = [QPolynomial.one()] + [QPolynomial.zero()] * n
    for p in bias:
        new = []
        for j in range(n + 1):
            acc = QPolynomial.zero()
            power = Fraction(1)
            for j1 in range(j + 1):
                if power != 0:
                    acc = acc + q_binomial(j, j1) * power * coeffs[j - j1]
                power *= p
            new.append(acc)
        coeffs = new
    return coeffs[n]


def inversion_pgf_from_compositions(
    n: int, bias, *, max_n: int = DEFAULT_MAX_N
) -> QPolynomial:
    """E q^Inv as the cut-weighted sum of q-multinomial coefficients.

    An independent route to the same polynomial: each cut (b1..ba)
    contributes p^b times the inversion generating function of the
    permutations it can produce, which is the q-multinomial.
    """
    bias = validate_bias(bias)
    if n > max_n:
        raise ValueError(f"n={n} above series cap {max_n}")
    total = QPolynomial.zero()
    for parts in weak_compositions(n, len(bias)):
        weight = Fraction(1)
        for p, b in zip(bias, parts):
            if b:
                weight *= p ** b
        if weight == 0:
            continue
        total = total + weight * q_multinomial(n, parts)
    return total


def inversion_pgf_from_distribution(dist: ExactDistribution) -> QPolynomial:
    coeffs = [Fraction(0)] * (math.comb(dist.n, 2) + 1)
    for perm, mass in dist.masses.items():
        coeffs[inversions(perm)] += mass
    return QPolynomial(coeffs)


def expected_inversions(spec: ShuffleSpec) -> Fraction:
    """Exact expected inversion count after k biased shuffles:

        C(n,2)/2 * (1 - (sum p_i^2)^k)

    Each pair of cards is inverted with probability half the chance their
    pile-assignment histories differ.
    """
    return Fraction(math.comb(spec.n, 2), 2) * (1 - spec.sum_squares() ** spec.k)


def expected_descents(spec: ShuffleSpec) -> Fraction:
    """Exact expected descent count after k biased shuffles, counting the
    conventional descent at position n:

        1 + (n-1)/2 * (1 - (sum p_i^2)^k)
    """
    if spec.n < 1:
        raise ValueError("need n >= 1")
    return 1 + Fraction(spec.n - 1, 2) * (1 - spec.sum_squares() ** spec.k)


def euler_identity_residual(x: float, q: float, terms: int) -> float:
    """Truncation residual of Euler's partial-fraction identity

        prod_{j>=0} 1/(1 - x q^j)  =  sum_{j>=0} x^j / ((1-q)...(1-q^j))

    Both sides are evaluated to ``terms`` terms for |x|, |q| < 1; the
    absolute difference must shrink as ``terms`` grows.
    """
    if not (abs(x) < 1 and abs(q) < 1):
        raise ValueError("requires |x| < 1 and |q| < 1")
    product = 1.0
    qj = 1.0
    for _ in range(terms):
        product /= 1.0 - x * qj
        qj *= q
    total = 0.0
    term = 1.0  # x^j / ((1-q)...(1-q^j)), starting at j = 0
    qj = 1.0
    for j in range(terms):
        total += term
        qj *= q
        term *= x / (1.0 - qj)
    return abs(product - total)


def translate_identity_check(n: int, a: int, *, max_n: int = 7) -> bool:
    """Verify that descent-restricted cycle-type counts match multiset-of-
    primitive-necklace counts, for every content of n letters from an
    a-letter alphabet and every cycle type.

    Both sides are enumerated independently: permutations on the left,
    necklace multisets on the right.
    """
    from .necklaces import enumerate_primitive_multisets, length_multiset

    if n > max_n:
        raise ValueError(f"n={n} above enumeration cap {max_n}")
    perms = symmetric_group_list(n)
    stats = [(descent_set(p), cycle_type_key(cycle_type(p))) for p in perms]
    for parts in weak_compositions(n, a):
        allowed = set(partial_sums(parts)) | {n}
        left: Counter = Counter()
        for des, key in stats:
            if des <= allowed:
                left[key] += 1
        right: Counter = Counter()
        for multiset in enumerate_primitive_multisets(parts):
            right[cycle_type_key(length_multiset(multiset))] += 1
        if left != right:
            return False
    return True
