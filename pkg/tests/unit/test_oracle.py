"""Tests for the finite-field oracle"""

import numpy as np
import pytest

from src.cremona import homogeneous_system
from src.exceptions import OracleError, PreconditionError
from src.oracle import (
    check_instance,
    exponents,
    instance_of,
    interpolation_matrix,
    rank_mod_p,
    scaled_instance,
    system_dim,
    validate_cremona_rule,
)

# fits the int64 elimination path
PRIME_31 = 2147483647


class TestRankModP:
    """Test exact elimination over F_p"""

    def test_dependent_rows(self) -> None:
        assert rank_mod_p(np.array([[1, 2], [2, 4]]), 7) == 1

    def test_rank_depends_on_the_field(self) -> None:
        matrix = np.array([[1, 1], [1, 8]])
        assert rank_mod_p(matrix, 7) == 1
        assert rank_mod_p(matrix, 11) == 2

    def test_object_and_int64_paths_agree(self) -> None:
        rng = np.random.default_rng(3)
        matrix = rng.integers(0, 50, size=(6, 8))
        big = (1 << 61) - 1
        assert rank_mod_p(matrix, PRIME_31) == rank_mod_p(matrix, big) == 6


class TestInterpolation:
    """Test the interpolation matrix layout"""

    def test_exponents(self) -> None:
        monomials = list(exponents(2, 2))
        assert len(monomials) == 6
        assert monomials[0] == (2, 0)
        assert monomials[-1] == (0, 0)

    def test_matrix_shape(self) -> None:
        matrix = interpolation_matrix(2, 3, [2, 1], PRIME_31, 5)
        assert matrix.shape == (4, 10)

    def test_matrix_is_reproducible(self) -> None:
        first = interpolation_matrix(2, 3, [2], PRIME_31, 5)
        second = interpolation_matrix(2, 3, [2], PRIME_31, 5)
        assert (first == second).all()


class TestSystemDim:
    """Test sampled dimensions of linear systems"""

    def test_quartic_exception(self) -> None:
        """Seven double points in P^4 impose only 34 conditions on cubics"""
        result = system_dim(4, 3, [2] * 7, prime=PRIME_31)

        assert (result.columns, result.rank) == (35, 34)
        assert result.dim_at_sample == 1
        assert not result.certified_empty

    def test_certified_empty(self) -> None:
        result = system_dim(4, 5, [4] * 6, prime=PRIME_31)

        assert result.columns == 126
        assert result.conditions == 210
        assert result.certified_empty
        assert "certified empty" in str(result)

    @pytest.mark.parametrize(
        "N,d,mults,rank",
        [
            (2, 2, [2, 2], 5),
            (2, 3, [2, 2, 2], 9),
            (1, 3, [2, 2], 4),
        ],
    )
    def test_small_ranks(self, N: int, d: int, mults: list, rank: int) -> None:
        assert system_dim(N, d, mults).rank == rank

    def test_uses_configured_prime_and_seed(self) -> None:
        result = system_dim(2, 2, [2])
        assert result.prime > 1 << 61
        assert result.seed == 20240229

    def test_rejects_composite_modulus(self) -> None:
        with pytest.raises(OracleError, match="not prime"):
            system_dim(2, 2, [2], prime=100)

    def test_prime_must_exceed_degree(self) -> None:
        with pytest.raises(OracleError, match="exceed the degree"):
            system_dim(2, 5, [2], prime=3)

    def test_column_cap(self) -> None:
        with pytest.raises(OracleError, match="exceed the cap"):
            system_dim(4, 10, [2], column_cap=100)

    def test_rejects_zero_multiplicity(self) -> None:
        with pytest.raises(OracleError, match="positive"):
            system_dim(2, 3, [2, 0])


class TestInstances:
    """Test instantiating parameterized systems"""

    def test_scaled_instance(self) -> None:
        scaled = scaled_instance(homogeneous_system(4, 6, 30, 20))
        assert scaled == homogeneous_system(4, 6, 3, 2)

    def test_instance_of(self) -> None:
        system = homogeneous_system(4, 6, 3, 2)
        assert instance_of(system, 2) == (5, [4] * 6)
        with pytest.raises(PreconditionError):
            instance_of(system, 0)

    def test_check_instance(self) -> None:
        check = check_instance(homogeneous_system(4, 6, 3, 2), 1)
        assert (check.degree, check.columns, check.status) == (2, 15, "empty")

    def test_check_instance_skips_large_systems(self) -> None:
        check = check_instance(homogeneous_system(4, 6, 300, 200), 1)
        assert check.status == "skipped"


class TestCremonaValidation:
    """Test the sampled cross-check of the reduction rule"""

    def test_only_small_dimensions(self) -> None:
        with pytest.raises(PreconditionError):
            validate_cremona_rule(4, trials=1)

    def test_few_trials_in_the_plane(self) -> None:
        report = validate_cremona_rule(2, trials=5, d_max=5, prime=PRIME_31)
        assert len(report.rows) == 5
        assert report.ok
        assert report.summary().startswith("Cremona rule in P^2, 5 trials")
