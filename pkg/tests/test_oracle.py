"""
Tests for oracle functions, class enumeration and the phase-oracle action.
"""

from itertools import combinations

import numpy as np
import pytest

from oracledisc.constants import FunctionClass
from oracledisc.errors import CapacityError, ValidationError
from oracledisc.linalg import random_density, random_state
from oracledisc.oracle import (
    OracleFunction,
    apply_oracle,
    apply_oracle_density,
    balanced_count,
    balanced_pair_sum,
    classify,
    enumerate_balanced,
    enumerate_constant,
    pair_sum_formula,
    table_one_counts,
    table_one_formula,
)


class TestOracleFunction:

    def test_rejects_wrong_length(self):
        with pytest.raises(ValidationError):
            OracleFunction(2, (0, 1, 0))

    def test_rejects_non_bits(self):
        with pytest.raises(ValidationError):
            OracleFunction(1, (0, 2))

    def test_hex_least_significant_bit_is_f0(self):
        assert OracleFunction.from_hex("0f", 2).table == (1, 1, 1, 1)
        assert OracleFunction.from_hex("03", 2).table == (1, 1, 0, 0)
        assert OracleFunction.from_hex("0x1", 1).table == (1, 0)

    def test_hex_rejects_extra_bits(self):
        with pytest.raises(ValidationError, match="beyond"):
            OracleFunction.from_hex("1f", 2)

    def test_hex_rejects_garbage(self):
        with pytest.raises(ValidationError):
            OracleFunction.from_hex("zz", 2)

    def test_to_hex(self):
        assert OracleFunction(2, (1, 1, 0, 0)).to_hex() == "3"
        assert OracleFunction(3, (0, 0, 0, 0, 1, 1, 1, 1)).to_hex() == "f0"
        f = OracleFunction.from_ones(3, (1, 4, 6, 7))
        assert OracleFunction.from_hex(f.to_hex(), 3) == f

    def test_signs(self):
        np.testing.assert_array_equal(OracleFunction(2, (0, 1, 1, 0)).signs, [1, -1, -1, 1])


class TestClassification:

    def test_classes(self):
        assert classify(OracleFunction(2, (0, 0, 0, 0))) is FunctionClass.CONSTANT
        assert classify(OracleFunction(2, (1, 1, 1, 1))) is FunctionClass.CONSTANT
        assert classify(OracleFunction(2, (1, 0, 1, 0))) is FunctionClass.BALANCED
        assert classify(OracleFunction(2, (1, 0, 0, 0))) is FunctionClass.NEITHER

    def test_balanced_count(self):
        assert [balanced_count(n) for n in (1, 2, 3, 4)] == [2, 6, 70, 12870]


class TestEnumeration:

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_balanced_enumeration_is_complete(self, n):
        functions = list(enumerate_balanced(n))
        assert len(functions) == balanced_count(n)
        assert len(set(functions)) == len(functions)
        assert all(classify(f) is FunctionClass.BALANCED for f in functions)

    def test_lexicographic_order(self):
        ones = [f.ones for f in enumerate_balanced(2)]
        assert ones == list(combinations(range(4), 2))

    def test_constant_enumeration(self):
        zeros, ones = enumerate_constant(2)
        assert zeros.table == (0, 0, 0, 0)
        assert ones.table == (1, 1, 1, 1)

    def test_cap_fails_before_enumerating(self):
        with pytest.raises(CapacityError, match="601080390"):
            enumerate_balanced(5)

    def test_cap_override(self):
        with pytest.raises(CapacityError):
            enumerate_balanced(3, cap=2)


class TestPhaseOracle:

    def test_pure_state_action(self, rng):
        psi = random_state(4, rng)
        f = OracleFunction(2, (0, 1, 1, 0))
        np.testing.assert_allclose(apply_oracle(f, psi).amplitudes, f.signs * psi.amplitudes)

    def test_density_action_matches_conjugation(self, rng):
        rho = random_density(8, rng)
        for f in list(enumerate_balanced(3))[:10]:
            u = np.diag(f.signs)
            np.testing.assert_allclose(apply_oracle_density(f, rho).matrix, u @ rho.matrix @ u, atol=1e-15)

    def test_constant_oracle_is_identity_on_density(self, rng):
        rho = random_density(4, rng)
        for f in enumerate_constant(2):
            np.testing.assert_allclose(apply_oracle_density(f, rho).matrix, rho.matrix)

    def test_oracle_is_an_involution(self, rng):
        psi = random_state(8, rng)
        rho = random_density(8, rng)
        for f in enumerate_constant(3) + list(enumerate_balanced(3)):
            np.testing.assert_array_equal(apply_oracle(f, apply_oracle(f, psi)).amplitudes, psi.amplitudes)
            np.testing.assert_array_equal(apply_oracle_density(f, apply_oracle_density(f, rho)).matrix, rho.matrix)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_preserves_norm(self, rng, n):
        psi = random_state(1 << n, rng)
        for f in enumerate_constant(n) + list(enumerate_balanced(n)):
            assert abs(np.linalg.norm(apply_oracle(f, psi).amplitudes) - 1.0) <= 1e-12

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValidationError):
            apply_oracle_density(OracleFunction(1, (0, 1)), random_density(4, rng))


class TestPairSums:

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_off_diagonal_identity(self, n):
        size = 1 << n
        expected = -balanced_count(n) // (size - 1)
        assert -balanced_count(n) % (size - 1) == 0
        for x in range(size):
            for y in range(size):
                if x != y:
                    assert balanced_pair_sum(n, x, y) == expected
                    assert pair_sum_formula(n, x, y) == expected

    def test_examples(self):
        assert balanced_pair_sum(2, 0, 3) == -2
        assert balanced_pair_sum(3, 1, 1) == 70
        assert pair_sum_formula(3, 1, 1) == 70

    def test_pair_out_of_range(self):
        with pytest.raises(ValidationError):
            balanced_pair_sum(2, 0, 4)


class TestInstanceCounts:

    def test_three_qubits(self):
        assert table_one_counts(3) == {(0, 0): 15, (0, 1): 20, (1, 0): 20, (1, 1): 15}

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_counts_match_binomials(self, n):
        assert table_one_counts(n, 0, (1 << n) - 1) == table_one_formula(n)
        assert sum(table_one_formula(n).values()) == balanced_count(n)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_every_pair_matches_binomials(self, n):
        size = 1 << n
        formula = table_one_formula(n)
        for x in range(size):
            for y in range(size):
                if x != y:
                    assert table_one_counts(n, x, y) == formula

    def test_needs_distinct_arguments(self):
        with pytest.raises(ValidationError):
            table_one_counts(2, 1, 1)
