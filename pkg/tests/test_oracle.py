from itertools import combinations

import numpy as np
import pytest

from hdcode import (
    Codebook,
    exact_distance_spectrum,
    exhaustive_best_codebook,
    extend_codebook,
    min_distance,
    total_ones,
)
from hdcode.oracle import ORACLE_MAX_K, ORACLE_MAX_N


def brute_force_optimum(n, k, d):
    """Max total ones over every 2**k subset; None when no subset is valid."""
    best = None
    for combo in combinations(range(1 << n), 1 << k):
        if all((a ^ b).bit_count() >= d for a, b in combinations(combo, 2)):
            ones = sum(v.bit_count() for v in combo)
            best = ones if best is None else max(best, ones)
    return best


class TestExhaustiveSearch:
    @pytest.mark.parametrize(
        "n,k,d",
        [(2, 1, 1), (3, 2, 1), (3, 2, 2), (4, 2, 2), (4, 2, 3), (4, 3, 1), (4, 3, 2), (5, 2, 3)],
    )
    def test_matches_full_enumeration(self, n, k, d):
        result = exhaustive_best_codebook(n, k, d)
        assert result.optimum_ones == brute_force_optimum(n, k, d)

    def test_witness_attains_the_optimum(self):
        result = exhaustive_best_codebook(4, 3, 2)
        book = result.witness
        assert book.m == 8
        assert book.is_valid()
        assert total_ones(book) == result.optimum_ones == 16

    def test_known_small_optima(self):
        assert exhaustive_best_codebook(3, 2, 1).optimum_ones == 9
        assert exhaustive_best_codebook(3, 2, 2).optimum_ones == 6
        assert exhaustive_best_codebook(6, 3, 2).optimum_ones == 36

    def test_infeasible_instances(self):
        for (n, k, d) in [(2, 2, 2), (3, 2, 3), (4, 2, 3)]:
            result = exhaustive_best_codebook(n, k, d)
            assert not result.feasible
            assert result.optimum_ones is None
            assert result.witness is None

    def test_capacity_cap(self):
        with pytest.raises(ValueError):
            exhaustive_best_codebook(7, 2, 1)
        with pytest.raises(ValueError):
            exhaustive_best_codebook(6, 4, 1)
        assert ORACLE_MAX_N == 6
        assert ORACLE_MAX_K == 3

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            exhaustive_best_codebook(4, 2, 0)
        with pytest.raises(ValueError):
            exhaustive_best_codebook(4, 2, 5)

    def test_deterministic_witness(self):
        first = exhaustive_best_codebook(4, 2, 2)
        second = exhaustive_best_codebook(4, 2, 2)
        assert first.witness == second.witness


class TestDistanceSpectrum:
    def test_two_codeword_book(self):
        book = Codebook.from_values(10, 1, 10, [0, (1 << 10) - 1])
        spectrum = exact_distance_spectrum(book)
        assert spectrum.counts.shape == (2, 11)
        assert spectrum.total_at(10) == 2
        assert spectrum.min_distance == 10
        assert spectrum.counts.sum() == 2

    def test_hamming_code_distance_profile(self):
        book = extend_codebook(Codebook(n=7, k=4, d=3))
        spectrum = exact_distance_spectrum(book)
        # every codeword sees 7 others at distance 3, 7 at 4, and 1 at 7
        assert np.all(spectrum.counts[:, 3] == 7)
        assert np.all(spectrum.counts[:, 4] == 7)
        assert np.all(spectrum.counts[:, 7] == 1)
        assert spectrum.counts.sum() == 16 * 15
        assert spectrum.min_distance == 3 == min_distance(book)

    def test_rows_sum_to_size_minus_one(self):
        # d=1 admits every length-5 word, and k=5 makes that a complete book
        book = extend_codebook(Codebook(n=5, k=5, d=1))
        spectrum = exact_distance_spectrum(book)
        assert np.all(spectrum.counts.sum(axis=1) == book.m - 1)
        assert np.all(spectrum.counts[:, 0] == 0)

    def test_requires_exact_size(self):
        book = Codebook.from_values(4, 2, 1, [0, 1, 2])
        with pytest.raises(ValueError):
            exact_distance_spectrum(book)
