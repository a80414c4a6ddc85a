"""Acceptance suite: one test per release criterion, at full stated caps.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion (plus timing).  Tolerances are pinned here and nowhere else:
exact equalities are exact, float checks carry their stated epsilon.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction as F
from itertools import combinations

import numpy as np
from scipy import stats as scipy_stats

from riffle.counting import (
    count_descent_det,
    count_descent_exact,
    involutions_descent_subset,
    ncycles_descent_det,
    ncycles_descent_ie,
)
from riffle.genfuncs import (
    cycle_pgf_from_distribution,
    cycle_structure_pgf,
    euler_identity_residual,
    expected_descents,
    expected_fixed_points,
    expected_inversions,
    inversion_pgf,
    inversion_pgf_from_compositions,
    inversion_pgf_from_distribution,
)
from riffle.necklaces import (
    enumerate_primitive_multisets,
    is_primitive,
    length_multiset,
    multiset_key,
    necklace_decomposition,
    standardize,
    ubar_forward,
    word_from_permutation,
)
from riffle.permutations import (
    Permutation,
    compositions,
    cycle_type,
    descent_set,
    is_involution,
    is_n_cycle,
    partial_sums,
    symmetric_group_list,
)
from riffle.shuffles import (
    ShuffleSpec,
    convolve,
    exact_distribution,
    exact_distribution_drops,
    exact_distribution_pile_words,
    exact_kfold_distribution,
    lalley_lower_steps,
    lalley_theta,
    sample,
    substream,
    suf_bound,
    tensor_bias,
    tensor_power,
    tv_distance,
    uniform_distribution,
)
from riffle.verify import BIAS_PANEL

FAIR = (F(1, 2), F(1, 2))


@contextmanager
def criterion(cid: str):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"ACCEPTANCE {cid}: FAIL")
        raise
    print(f"ACCEPTANCE {cid}: PASS ({time.perf_counter() - start:.1f}s)")


def test_c01_three_card_mass_table():
    with criterion("C1 three-card mass table"):
        for p1 in (F(1, 2), F(1, 3), F(1, 5)):
            p2 = 1 - p1
            dist = exact_distribution(3, (p1, p2))
            expected = {
                Permutation([1, 2, 3]): p1**3 + p1**2 * p2 + p1 * p2**2 + p2**3,
                Permutation([1, 3, 2]): p1**2 * p2,
                Permutation([3, 2, 1]): F(0),
                Permutation([2, 1, 3]): p1 * p2**2,
                Permutation([2, 3, 1]): p1 * p2**2,
                Permutation([3, 1, 2]): p1**2 * p2,
            }
            for perm, want in expected.items():
                assert dist.mass(perm) == want


def test_c02_description_equivalence():
    with criterion("C2 description equivalence"):
        for n in range(6):
            for bias in BIAS_PANEL:
                d1 = exact_distribution(n, bias)
                assert d1 == exact_distribution_drops(n, bias)
                assert d1 == exact_distribution_pile_words(n, bias)
        # point-dropping sampler: chi-squared goodness of fit at 1e-3
        n, bias, samples = 4, (F(1, 3), F(2, 3)), 100_000
        dist = exact_distribution(n, bias)
        rng = substream(20260810, 1)
        spec = ShuffleSpec(n, bias, 1)
        counts: dict[Permutation, int] = {}
        for _ in range(samples):
            perm = sample(spec, "geometric", rng)
            counts[perm] = counts.get(perm, 0) + 1
        assert all(dist.mass(p) > 0 for p in counts), "samples outside the support"
        stat = sum(
            (counts.get(p, 0) - float(mass) * samples) ** 2 / (float(mass) * samples)
            for p, mass in dist.masses.items()
        )
        dof = len(dist.masses) - 1
        critical = scipy_stats.chi2.ppf(1 - 1e-3, dof)
        assert stat <= critical, f"chi2 {stat:.2f} > {critical:.2f}"


def test_c03_convolution_tensor_identity():
    with criterion("C3 convolution = tensored shuffle"):
        cases = [
            (FAIR, (F(1, 3), F(2, 3))),              # (a, b) = (2, 2)
            ((F(1, 3), F(2, 3)), (F(1, 2), F(1, 4), F(1, 4))),  # (2, 3)
        ]
        for n in range(1, 6):
            for pa, pb in cases:
                got = convolve(exact_distribution(n, pa), exact_distribution(n, pb))
                assert got == exact_distribution(n, tensor_bias(pa, pb))


def test_c04_tv_within_bound():
    with criterion("C4 distance to uniform within bound"):
        assert tv_distance(
            exact_distribution(3, FAIR), uniform_distribution(3)
        ) == F(1, 3)
        for n in range(2, 7):
            uniform = uniform_distribution(n)
            for bias in BIAS_PANEL:
                if len(bias) == 1:
                    continue
                for k in range(0, 9):
                    bound = suf_bound(ShuffleSpec(n, bias, k))
                    if bound >= 1:
                        continue
                    tv = tv_distance(exact_kfold_distribution(n, bias, k), uniform)
                    assert tv <= bound, (n, bias, k)


def test_c05_lalley_constants():
    with criterion("C5 lower-bound exponent"):
        assert abs(lalley_theta(F(1, 2)) - 3.0) < 1e-10
        for n in (2, 52, 1024):
            assert abs(lalley_lower_steps(n, F(1, 2)) - 1.5 * math.log2(n)) < 1e-9


def test_c06_worked_example_byte_exact():
    with criterion("C6 twelve-letter worked example"):
        word = (2, 2, 1, 1, 2, 3, 3, 3, 2, 3, 2, 2)
        st = standardize(word)
        assert st.images == (3, 4, 1, 2, 5, 9, 10, 11, 6, 12, 7, 8)
        assert sorted(necklace_decomposition(word).items()) == [
            ((1, 2), 2),
            ((2,), 1),
            ((2, 3), 1),
            ((2, 3, 2, 3, 3), 1),
        ]
        assert word_from_permutation(st, (2, 6, 4)) == word


def test_c07_bijection_exhaustive():
    with criterion("C7 necklace bijection, all compositions to n = 6"):
        for n in range(1, 7):
            perms = symmetric_group_list(n)
            for parts in compositions(n):
                allowed = set(partial_sums(parts))
                domain = [p for p in perms if descent_set(p.inverse()) <= allowed]
                images = [ubar_forward(p, parts) for p in domain]
                for p, image in zip(domain, images):
                    assert length_multiset(image) == cycle_type(p)
                    assert all(is_primitive(neck) for neck in image)
                keys = {multiset_key(m) for m in images}
                assert len(keys) == len(domain)
                assert keys == {
                    multiset_key(m) for m in enumerate_primitive_multisets(parts)
                }


def test_c08_cycle_generating_function():
    with criterion("C8 cycle-structure generating function"):
        for n in range(1, 7):
            for bias in BIAS_PANEL:
                dist = exact_distribution(n, bias)
                pgf = cycle_structure_pgf(n, bias)
                assert pgf == cycle_pgf_from_distribution(dist)
                assert pgf.expected_count(1) == expected_fixed_points(
                    ShuffleSpec(n, bias, 1)
                )
        assert expected_fixed_points(ShuffleSpec(3, FAIR, 1)) == F(7, 4)


def test_c09_descent_counting_formulas():
    with criterion("C9 descent counting formulas"):
        # permutations by exact descent set: inclusion-exclusion = determinant
        for n in range(1, 8):
            buckets: dict[frozenset, int] = {}
            for p in symmetric_group_list(n):
                key = descent_set(p)
                buckets[key] = buckets.get(key, 0) + 1
            for r in range(n):
                for inner in combinations(range(1, n), r):
                    deset = frozenset(inner) | {n}
                    want = buckets.get(deset, 0)
                    assert count_descent_exact(n, deset) == want
                    assert count_descent_det(n, sorted(inner)) == want
        # n-cycles by exact descent set, both formulas, one deck larger
        for n in range(1, 9):
            buckets = {}
            for p in symmetric_group_list(n):
                if is_n_cycle(p):
                    key = descent_set(p)
                    buckets[key] = buckets.get(key, 0) + 1
            for r in range(n):
                for inner in combinations(range(1, n), r):
                    deset = frozenset(inner) | {n}
                    want = buckets.get(deset, 0)
                    assert ncycles_descent_ie(n, deset) == want
                    assert ncycles_descent_det(n, deset) == want
        # involutions with descent set inside K
        for n in range(1, 8):
            involutions = [p for p in symmetric_group_list(n) if is_involution(p)]
            for r in range(n):
                for inner in combinations(range(1, n), r):
                    kset = frozenset(inner) | {n}
                    want = sum(1 for p in involutions if descent_set(p) <= kset)
                    assert involutions_descent_subset(n, kset) == want


def test_c10_inversion_statistics():
    with criterion("C10 inversion statistics"):
        for n in range(1, 8):
            for bias in BIAS_PANEL:
                series = inversion_pgf(n, bias)
                assert series == inversion_pgf_from_compositions(n, bias)
                assert series == inversion_pgf_from_distribution(
                    exact_distribution(n, bias)
                )
        fair3 = ShuffleSpec(3, FAIR, 1)
        assert expected_inversions(fair3) == F(3, 4)
        assert inversion_pgf(3, FAIR).derivative()(1) == F(3, 4)
        assert expected_descents(fair3) == F(3, 2)
        assert euler_identity_residual(0.5, 0.5, 30) < 1e-8


def test_c11_monte_carlo_closure():
    with criterion("C11 Monte Carlo closure at n = 52"):
        n, bias, samples = 52, (F(2, 5), F(3, 5)), 100_000
        for k in (1, 5, 10):
            rng = np.random.default_rng(20260810 + k)
            probs = np.array([float(x) for x in tensor_power(bias, k)])
            probs /= probs.sum()
            labels = rng.choice(len(probs), size=(samples, n), p=probs)
            sigma = np.argsort(labels, axis=1, kind="stable")
            pi0 = np.argsort(sigma, axis=1, kind="stable")  # row-wise inverse

            fixed = (pi0 == np.arange(n)).sum(axis=1)
            descents = (pi0[:, :-1] > pi0[:, 1:]).sum(axis=1) + 1
            inversions = np.zeros(samples, dtype=np.int64)
            for i in range(n - 1):
                inversions += (labels[:, i, None] > labels[:, i + 1:]).sum(axis=1)

            # cards i < j are inverted exactly when their pile labels invert
            check = slice(0, 50)
            brute = np.array([
                sum(
                    1
                    for i in range(n)
                    for j in range(i + 1, n)
                    if pi0[r, i] > pi0[r, j]
                )
                for r in range(check.start, check.stop)
            ])
            assert np.array_equal(brute, inversions[check])

            spec = ShuffleSpec(n, bias, k)
            closed = {
                "fixed points": (fixed, expected_fixed_points(spec)),
                "inversions": (inversions, expected_inversions(spec)),
                "descents": (descents, expected_descents(spec)),
            }
            for name, (values, want) in closed.items():
                mean = values.mean()
                se = values.std(ddof=1) / math.sqrt(samples)
                assert abs(mean - float(want)) <= 4 * se, (
                    k, name, mean, float(want), 4 * se
                )
