"""Biased riffle shuffles: samplers, exact measures, and mixing bounds.

A biased a-shuffle cuts an n-card deck into a piles with multinomial(p)
sizes and riffles the piles together uniformly over interleavings.  Reading
the shuffled deck top to bottom gives the one-line form of the resulting
permutation, and that reading defines the measure computed here.

Four equivalent sampling procedures are provided (``interleave``, ``drop``,
``geometric``, ``inverse``), plus exact enumeration routes for three of
them, so the equivalence is testable and not just asserted.

Composition convention: the shuffle applied first is the *left* factor, so
a k-fold shuffle is ``s1 * s2 * ... * sk``.  With this order, convolving an
a-shuffle with a b-shuffle is exactly an (ab)-shuffle whose bias is the
lexicographic tensor of the two bias vectors (first shuffle = major digit);
``convolve`` below follows the same order.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .permutations import (
    Permutation,
    descent_set,
    partial_sums,
    symmetric_group_list,
    weak_compositions,
)

DEFAULT_MAX_N = 8

SAMPLE_METHODS = ("interleave", "drop", "geometric", "inverse")


# --- bias vectors -------------------------------------------------------

def validate_bias(bias) -> tuple[Fraction, ...]:
    """Check a probability vector: entries >= 0 summing to exactly 1."""
    probs = tuple(Fraction(p) for p in bias)
    if not probs:
        raise ValueError("bias vector is empty")
    if any(p < 0 for p in probs):
        raise ValueError(f"negative bias entry in {probs}")
    total = sum(probs)
    if total != 1:
        raise ValueError(f"bias sums to {total}, not 1 (no silent renormalization)")
    return probs


def parse_bias(text: str) -> tuple[Fraction, ...]:
    """Parse '1/3,2/3' or '0.25,0.75' into exact Fractions summing to 1.

    Decimals convert exactly over powers of ten, so '0.4' means 2/5.
    """
    try:
        probs = tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse bias {text!r}: {exc}") from None
    return validate_bias(probs)


def tensor_bias(p, p2) -> tuple[Fraction, ...]:
    """Lexicographic product (p1*p2'_1, ..., p1*p2'_b, p2*p2'_1, ...).

    This is the bias of the composite shuffle when a p-shuffle is applied
    first and a p2-shuffle second.
    """
    p = validate_bias(p)
    p2 = validate_bias(p2)
    return tuple(x * y for x in p for y in p2)


def tensor_power(bias, k: int) -> tuple[Fraction, ...]:
    """k-fold tensor of a bias vector with itself; k = 0 gives (1,)."""
    if k < 0:
        raise ValueError("negative k")
    result: tuple[Fraction, ...] = (Fraction(1),)
    for _ in range(k):
        result = tensor_bias(result, bias)
    return result


@dataclass(frozen=True)
class ShuffleSpec:
    """Deck size, bias vector, and number of repeated shuffles."""

    n: int
    bias: tuple[Fraction, ...]
    k: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative deck size")
        if self.k < 0:
            raise ValueError("negative shuffle count")
        object.__setattr__(self, "bias", validate_bias(self.bias))

    @property
    def a(self) -> int:
        return len(self.bias)

    def sum_squares(self) -> Fraction:
        return sum(p * p for p in self.bias)


# --- exact distributions ------------------------------------------------

class ExactDistribution:
    """Exact rational probability measure on S_n; zero masses are omitted."""

    __slots__ = ("n", "masses")

    def __init__(self, n: int, masses: dict[Permutation, Fraction]):
        clean: dict[Permutation, Fraction] = {}
        total = Fraction(0)
        for perm, mass in masses.items():
            if perm.n != n:
                raise ValueError(f"permutation of wrong size: {perm}")
            if mass < 0:
                raise ValueError(f"negative mass for {perm}")
            total += mass
            if mass:
                clean[perm] = Fraction(mass)
        if total != 1:
            raise ValueError(f"masses sum to {total}, not 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "masses", clean)

    def mass(self, perm: Permutation) -> Fraction:
        return self.masses.get(perm, Fraction(0))

    def support(self) -> list[Permutation]:
        return sorted(self.masses)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExactDistribution)
            and self.n == other.n
            and self.masses == other.masses
        )

    def __hash__(self):
        raise TypeError("unhashable")

    def __repr__(self) -> str:
        return f"ExactDistribution(n={self.n}, support={len(self.masses)})"

    def __setattr__(self, name, value):
        raise AttributeError("ExactDistribution is immutable")

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "masses": [
                {"perm": list(perm.images), "p": f"{m.numerator}/{m.denominator}"}
                for perm, m in sorted(self.masses.items())
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ExactDistribution":
        masses = {
            Permutation(entry["perm"]): Fraction(entry["p"])
            for entry in obj["masses"]
        }
        return cls(obj["n"], masses)


def _check_cap(n: int, max_n: int):
    if n > max_n:
        raise ValueError(f"n={n} above enumeration cap {max_n}")


def _content_mass(bias, parts) -> Fraction:
    mass = Fraction(1)
    for p, b in zip(bias, parts):
        if b:
            mass *= p ** b
    return mass


def _words_with_content(counts: list[int]) -> Iterator[tuple[int, ...]]:
    """Distinct words (tuples of 0-based letters) with the given letter counts."""
    if not any(counts):
        yield ()
        return
    for letter, c in enumerate(counts):
        if c == 0:
            continue
        counts[letter] -= 1
        for rest in _words_with_content(counts):
            yield (letter,) + rest
        counts[letter] += 1


def _arrangement_from_pile_word(word, psums) -> Permutation:
    """Deck reading when position j received the next card of pile word[j]."""
    counters = [0] + list(psums[:-1])
    arrangement = []
    for pile in word:
        counters[pile] += 1
        arrangement.append(counters[pile])
    return Permutation(arrangement)


def exact_distribution(
    n: int, bias, *, max_n: int = DEFAULT_MAX_N
) -> ExactDistribution:
    """The exact single-shuffle measure, by enumerating cuts x interleavings.

    Each interleaving of a cut (b1..ba) carries mass p1^b1 * ... * pa^ba:
    the uniform choice among interleavings cancels the multinomial factor
    of the cut law.
    """
    bias = validate_bias(bias)
    _check_cap(n, max_n)
    masses: dict[Permutation, Fraction] = {}
    for parts in weak_compositions(n, len(bias)):
        mass = _content_mass(bias, parts)
        if mass == 0:
            continue
        psums = partial_sums(parts)
        for word in _words_with_content(list(parts)):
            perm = _arrangement_from_pile_word(word, psums)
            masses[perm] = masses.get(perm, Fraction(0)) + mass
    return ExactDistribution(n, masses)


def exact_distribution_drops(
    n: int, bias, *, max_n: int = DEFAULT_MAX_N
) -> ExactDistribution:
    """Same measure by the sequential drop rule, as an exact recursion.

    After a multinomial cut, cards drop one at a time, the next card coming
    from pile i with probability A_i / (A_1 + ... + A_a) where A_i counts
    the cards left in pile i.  Drops fill the new deck bottom-up.
    """
    bias = validate_bias(bias)
    _check_cap(n, max_n)
    a = len(bias)
    masses: dict[Permutation, Fraction] = {}
    arrangement = [0] * n

    def drop(remaining: list[int], starts: list[int], prob: Fraction):
        total = sum(remaining)
        if total == 0:
            perm = Permutation(arrangement)
            masses[perm] = masses.get(perm, Fraction(0)) + prob
            return
        for i in range(a):
            if remaining[i] == 0:
                continue
            # bottom card of pile i is its highest remaining label
            card = starts[i] + remaining[i]
            arrangement[total - 1] = card
            remaining[i] -= 1
            drop(remaining, starts, prob * Fraction(remaining[i] + 1, total))
            remaining[i] += 1

    for parts in weak_compositions(n, a):
        cut_mass = _content_mass(bias, parts) * math.factorial(n)
        for b in parts:
            cut_mass /= math.factorial(b)
        if cut_mass == 0:
            continue
        starts = [0] + list(partial_sums(parts)[:-1])
        drop(list(parts), starts, cut_mass)
    return ExactDistribution(n, masses)


def exact_distribution_pile_words(
    n: int, bias, *, max_n: int = DEFAULT_MAX_N
) -> ExactDistribution:
    """Same measure via the inverse description.

    Each card is dealt independently into pile w_c with probability
    p_{w_c}; reassembling the piles left to right sorts the cards stably by
    pile label.  That sorted order is the *inverse* of the shuffle, so each
    label word w contributes its mass to the inverse of the sorted
    arrangement.
    """
    bias = validate_bias(bias)
    _check_cap(n, max_n)
    masses: dict[Permutation, Fraction] = {}
    cards = range(1, n + 1)
    for word in itertools.product(range(len(bias)), repeat=n):
        mass = Fraction(1)
        for letter in word:
            mass *= bias[letter]
        if mass == 0:
            continue
        order = sorted(cards, key=lambda c: (word[c - 1], c))
        perm = Permutation(order).inverse()
        masses[perm] = masses.get(perm, Fraction(0)) + mass
    return ExactDistribution(n, masses)


def mass_by_inverse_descents(n: int, bias) -> dict[frozenset[int], Fraction]:
    """Single-shuffle mass of a permutation, keyed by descent set of its inverse.

    The mass of pi depends only on descent_set(pi^{-1}): it is the total
    bias-word mass of weakly increasing pile words with strict rises forced
    at those positions.  Computed by one O(n*a) sweep per descent class,
    which stays cheap even for the long tensored bias vectors of k-fold
    shuffles.
    """
    bias = validate_bias(bias)
    if n == 0:
        return {frozenset(): Fraction(1)}
    a = len(bias)
    out: dict[frozenset[int], Fraction] = {}
    positions = list(range(1, n))
    for r in range(len(positions) + 1):
        for strict in itertools.combinations(positions, r):
            strict_set = frozenset(strict)
            f = list(bias)
            for j in range(2, n + 1):
                prefix = list(itertools.accumulate(f))
                if (j - 1) in strict_set:
                    f = [bias[v] * (prefix[v - 1] if v else Fraction(0)) for v in range(a)]
                else:
                    f = [bias[v] * prefix[v] for v in range(a)]
            total = sum(f) if n else Fraction(1)
            out[frozenset(strict_set | {n})] = total
    return out


def exact_kfold_distribution(
    n: int, bias, k: int, *, max_n: int = DEFAULT_MAX_N
) -> ExactDistribution:
    """Exact measure of k repeated shuffles, via the tensored bias.

    Avoids convolving S_n-sized tables: the k-fold measure is the single
    shuffle with bias tensor_power(bias, k), and per-permutation masses
    come from the inverse-descent-class sweep.
    """
    _check_cap(n, max_n)
    classes = mass_by_inverse_descents(n, tensor_power(bias, k))
    masses: dict[Permutation, Fraction] = {}
    for perm in symmetric_group_list(n):
        m = classes[descent_set(perm.inverse())]
        if m:
            masses[perm] = m
    return ExactDistribution(n, masses)


def uniform_distribution(n: int) -> ExactDistribution:
    mass = Fraction(1, math.factorial(n))
    return ExactDistribution(n, {p: mass for p in symmetric_group_list(n)})


def convolve(d1: ExactDistribution, d2: ExactDistribution) -> ExactDistribution:
    """Law of a d1-shuffle followed by a d2-shuffle.

    The first factor acts first and is the left factor of the composite:
    (d1 * d2)(pi) = sum_sigma d1(sigma) d2(sigma^{-1} pi).  This is the
    order under which convolving an a-shuffle with a b-shuffle equals the
    (ab)-shuffle with lexicographically tensored bias.
    """
    if d1.n != d2.n:
        raise ValueError(f"size mismatch: {d1.n} vs {d2.n}")
    out: dict[Permutation, Fraction] = {}
    for s1, m1 in d1.masses.items():
        for s2, m2 in d2.masses.items():
            c = s1 * s2
            out[c] = out.get(c, Fraction(0)) + m1 * m2
    return ExactDistribution(d1.n, out)


def point_mass(perm: Permutation) -> ExactDistribution:
    return ExactDistribution(perm.n, {perm: Fraction(1)})


def tv_distance(d1: ExactDistribution, d2: ExactDistribution) -> Fraction:
    """Total variation distance (1/2) sum |d1(pi) - d2(pi)|, exact."""
    if d1.n != d2.n:
        raise ValueError(f"size mismatch: {d1.n} vs {d2.n}")
    keys = set(d1.masses) | set(d2.masses)
    return sum((abs(d1.mass(p) - d2.mass(p)) for p in keys), Fraction(0)) / 2


# --- mixing bounds ------------------------------------------------------

def suf_bound(spec: ShuffleSpec) -> Fraction:
    """Upper bound C(n,2) * (sum p_i^2)^k on tv(k-fold shuffle, uniform).

    Comes from the strong uniform time at which all cards have distinct
    pile-assignment histories; valid (and useful) whenever it is below 1.
    """
    return math.comb(spec.n, 2) * spec.sum_squares() ** spec.k


def lalley_theta(p1) -> float:
    """Exponent theta solving p1^theta + p2^theta = (p1^2 + p2^2)^2.

    The left side is strictly decreasing in theta for 0 < p1 < 1, so the
    root is unique; found by bisection to width 1e-12 and validated by
    residual, not by a citation.
    """
    p1 = float(p1)
    if not 0.0 < p1 < 1.0:
        raise ValueError(f"p1 must be strictly between 0 and 1: {p1}")
    p2 = 1.0 - p1
    rhs = (p1 * p1 + p2 * p2) ** 2

    def f(theta: float) -> float:
        return p1 ** theta + p2 ** theta - rhs

    lo = 0.0  # f(0) = 2 - rhs > 0
    hi = 1.0
    while f(hi) > 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise ArithmeticError("no bracket found for theta")
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2.0
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def lalley_lower_steps(n: int, p1) -> float:
    """Lower-bound step count (3+theta)/4 * log_{1/(p1^2+p2^2)} n.

    At p1 = 1/2 this is 1.5 * log2(n).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    p1 = float(p1)
    theta = lalley_theta(p1)
    p2 = 1.0 - p1
    r = p1 * p1 + p2 * p2
    return (3.0 + theta) / 4.0 * (math.log(n) / math.log(1.0 / r))


# --- samplers -----------------------------------------------------------

def substream(seed: int, index: int) -> random.Random:
    """Derive an independently seeded RNG stream from a 64-bit master seed.

    Stream i is random.Random(splitmix64(seed + (i+1)*GOLDEN)); the
    SplitMix64 finalizer decorrelates nearby seeds, so parallel workers can
    use substream(seed, worker_index) reproducibly.
    """
    mask = (1 << 64) - 1
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    z ^= z >> 31
    return random.Random(z)


def _categorical(bias) -> tuple[list[int], int]:
    """Integer thresholds for exact categorical sampling of a rational bias."""
    denom = math.lcm(*(p.denominator for p in bias))
    cumulative = []
    acc = 0
    for p in bias:
        acc += p.numerator * (denom // p.denominator)
        cumulative.append(acc)
    return cumulative, denom


def _draw_category(cumulative: list[int], denom: int, rng: random.Random) -> int:
    return bisect.bisect_right(cumulative, rng.randrange(denom))


def _draw_counts(n: int, cumulative, denom, a: int, rng) -> list[int]:
    # multinomial(n; p) pile sizes = category counts of n independent draws
    counts = [0] * a
    for _ in range(n):
        counts[_draw_category(cumulative, denom, rng)] += 1
    return counts


def _single_interleave(n, bias, cumulative, denom, rng) -> Permutation:
    counts = _draw_counts(n, cumulative, denom, len(bias), rng)
    word = [i for i, c in enumerate(counts) for _ in range(c)]
    rng.shuffle(word)  # uniform over distinct interleavings
    return _arrangement_from_pile_word(word, partial_sums(counts))


def _single_drop(n, bias, cumulative, denom, rng) -> Permutation:
    counts = _draw_counts(n, cumulative, denom, len(bias), rng)
    starts = [0] + list(partial_sums(counts)[:-1])
    remaining = list(counts)
    arrangement = [0] * n
    total = n
    while total:
        r = rng.randrange(total)
        acc = 0
        for i, left in enumerate(remaining):
            acc += left
            if r < acc:
                break
        arrangement[total - 1] = starts[i] + remaining[i]
        remaining[i] -= 1
        total -= 1
    return Permutation(arrangement)


def _single_geometric(n, bias, cumulative, denom, rng) -> Permutation:
    # n points in [0,1]: interval i w.p. p_i, uniform inside; x = (i-1+u)/a.
    # Sorting by x is sorting by (i, u); the map x -> a*x mod 1 leaves u.
    pts = [(_draw_category(cumulative, denom, rng), rng.random()) for _ in range(n)]
    by_x = sorted(range(n), key=lambda t: (pts[t][0], pts[t][1], t))
    label = [0] * n
    for rank, t in enumerate(by_x, start=1):
        label[t] = rank
    by_u = sorted(range(n), key=lambda t: (pts[t][1], t))
    return Permutation(label[t] for t in by_u)


def _single_inverse(n, bias, cumulative, denom, rng) -> Permutation:
    word = [_draw_category(cumulative, denom, rng) for _ in range(n)]
    order = sorted(range(1, n + 1), key=lambda c: (word[c - 1], c))
    return Permutation(order).inverse()


_SINGLE_SAMPLERS: dict[str, Callable] = {
    "interleave": _single_interleave,
    "drop": _single_drop,
    "geometric": _single_geometric,
    "inverse": _single_inverse,
}


def sample(spec: ShuffleSpec, method: str = "inverse", rng: random.Random | None = None) -> Permutation:
    """Draw one permutation from the k-fold biased shuffle.

    The k single shuffles are sampled independently and composed with the
    first shuffle as the left factor.  Reproducible for a fixed (seeded)
    ``rng`` and method.
    """
    if method not in _SINGLE_SAMPLERS:
        raise ValueError(f"unknown method {method!r}; pick one of {SAMPLE_METHODS}")
    if rng is None:
        raise ValueError("a seeded random.Random is required")
    single = _SINGLE_SAMPLERS[method]
    cumulative, denom = _categorical(spec.bias)
    perm = Permutation.identity(spec.n)
    for _ in range(spec.k):
        perm = perm * single(spec.n, spec.bias, cumulative, denom, rng)
    return perm
