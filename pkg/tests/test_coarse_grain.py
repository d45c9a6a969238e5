from fractions import Fraction

import numpy as np
import pytest

import bistoch as bs
from bistoch import EXACT, FLOAT, Partition, ProbVec, StochMatrix
from bistoch.coarse_grain import uniform_dilation
from bistoch.errors import (
    InvalidPartition,
    InvalidRightInverse,
    NotExact,
    NotFixedPoint,
    ZeroComponent,
)

from conftest import random_permutation_mixture, random_stochastic_exact


def random_partition(rng, d):
    cuts = sorted(rng.choice(range(1, d), size=int(rng.integers(0, d - 1)), replace=False))
    bounds = [0, *cuts, d]
    return Partition(d=d, classes=tuple(tuple(range(a, b)) for a, b in zip(bounds, bounds[1:])))


class TestPartition:
    def test_validation(self):
        with pytest.raises(InvalidPartition):
            Partition(d=3, classes=((0, 1),))
        with pytest.raises(InvalidPartition):
            Partition(d=3, classes=((0, 1), (1, 2)))
        with pytest.raises(InvalidPartition):
            Partition(d=2, classes=((0, 1), ()))

    def test_properties(self):
        p = Partition(d=6, classes=((0, 1), (2,), (3, 4, 5)))
        assert p.class_sizes == (2, 1, 3)
        assert p.is_proper
        assert not Partition(d=2, classes=((0,), (1,))).is_proper

    def test_json_round_trip(self):
        p = Partition(d=4, classes=((0, 1), (2, 3)))
        assert Partition.from_json(p.to_json()) == p


class TestProjection:
    def test_singletons_give_identity(self):
        p = Partition(d=2, classes=((0,), (1,)))
        assert bs.projection_matrix(p) == StochMatrix.identity(2, mode=EXACT)

    def test_partial_sums(self):
        p = Partition(d=4, classes=((0, 1), (2, 3)))
        X = bs.projection_matrix(p)
        assert [[int(v) for v in row] for row in X.a] == [[1, 1, 0, 0], [0, 0, 1, 1]]
        pi = ProbVec([Fraction(1, 8), Fraction(3, 8), Fraction(1, 4), Fraction(1, 4)], mode=EXACT)
        assert bs.apply(X, pi) == ProbVec([Fraction(1, 2), Fraction(1, 2)], mode=EXACT)

    def test_row_sums_are_class_sizes(self):
        p = Partition(d=6, classes=((0, 1), (2,), (3, 4, 5)))
        X = bs.projection_matrix(p)
        assert X.rows == 3 and X.cols == 6
        assert tuple(int(s) for s in X.a.sum(axis=1)) == (2, 1, 3)


class TestUniformRightInverse:
    def test_singletons_give_identity(self):
        p = Partition(d=3, classes=((0,), (1,), (2,)))
        assert bs.uniform_right_inverse(p).matrix == StochMatrix.identity(3, mode=EXACT)

    def test_spreads_uniformly(self):
        p = Partition(d=4, classes=((0, 1), (2, 3)))
        Y = bs.uniform_right_inverse(p)
        lifted = bs.apply(Y.matrix, ProbVec([Fraction(1, 2), Fraction(1, 2)], mode=EXACT))
        assert lifted == ProbVec.uniform(4, mode=EXACT)

        p = Partition(d=3, classes=((0,), (1, 2)))
        lifted = bs.apply(
            bs.uniform_right_inverse(p).matrix, ProbVec([Fraction(1, 3), Fraction(2, 3)], mode=EXACT)
        )
        assert lifted == ProbVec.uniform(3, mode=EXACT)

    def test_section_identity_on_random_partitions(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            d = int(rng.integers(2, 13))
            p = random_partition(rng, d)
            X = bs.projection_matrix(p)
            Y = bs.uniform_right_inverse(p)
            assert StochMatrix(X.a @ Y.matrix.a, mode=EXACT) == StochMatrix.identity(p.n, mode=EXACT)
            yx = Y.matrix.a @ X.a
            assert np.array_equal(yx @ yx, yx)  # averaging over classes is idempotent


class TestProductRightInverse:
    def test_point_mass_environment(self):
        rho = ProbVec([1, 0, 0], mode=EXACT)
        Y = bs.product_right_inverse(2, rho)
        lifted = bs.apply(Y.matrix, ProbVec([Fraction(1, 4), Fraction(3, 4)], mode=EXACT))
        expect = [Fraction(1, 4), Fraction(3, 4), 0, 0, 0, 0]
        assert lifted == ProbVec(expect, mode=EXACT)

    def test_trivial_environment(self):
        Y = bs.product_right_inverse(3, ProbVec([1], mode=EXACT))
        assert Y.matrix == StochMatrix.identity(3, mode=EXACT)

    def test_tensor_product(self):
        rho = ProbVec([Fraction(1, 2), Fraction(1, 2)], mode=EXACT)
        Y = bs.product_right_inverse(2, rho)
        lifted = bs.apply(Y.matrix, ProbVec([Fraction(1, 4), Fraction(3, 4)], mode=EXACT))
        # flat order (m, i) -> i*N + m
        assert lifted == ProbVec([Fraction(1, 8), Fraction(3, 8), Fraction(1, 8), Fraction(3, 8)], mode=EXACT)


class TestCoarseGrain:
    def test_identity_coarse_grains_to_identity(self):
        p = Partition(d=4, classes=((0, 1), (2, 3)))
        Y = bs.uniform_right_inverse(p)
        T = bs.coarse_grain(StochMatrix.identity(4, mode=EXACT), p, Y)
        assert T == StochMatrix.identity(2, mode=EXACT)

    def test_cyclic_shift(self):
        shift = StochMatrix(
            [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], mode=EXACT
        )
        p = Partition(d=4, classes=((0, 1), (2, 3)))
        T = bs.coarse_grain(shift, p, bs.uniform_right_inverse(p))
        h = Fraction(1, 2)
        assert T == StochMatrix([[h, h], [h, h]], mode=EXACT)

    def test_lift_then_coarse_grain_is_identity_operation(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            n, d = 2, 4
            p = Partition(d=d, classes=((0, 1), (2, 3)))
            X = bs.projection_matrix(p)
            Y = bs.uniform_right_inverse(p)
            T0 = random_stochastic_exact(rng, n)
            S = StochMatrix(Y.matrix.a @ T0.a @ X.a, mode=EXACT)
            assert bs.coarse_grain(S, p, Y) == T0

    def test_output_left_stochastic_on_random_bistochastic(self):
        rng = np.random.default_rng(32)
        for _ in range(200):
            d = int(rng.integers(2, 10))
            p = random_partition(rng, d)
            S = random_permutation_mixture(rng, d, mode=FLOAT)
            Y = bs.uniform_right_inverse(p, mode=FLOAT)
            T = bs.coarse_grain(S, p, Y)
            assert bs.validate(T, tol=1e-12).left

    def test_rejects_invalid_right_inverse(self):
        p = Partition(d=4, classes=((0, 1), (2, 3)))
        # column 0 leaks mass outside class 0
        bad = bs.RightInverse(
            partition=p,
            matrix=StochMatrix(
                [[Fraction(1, 2), 0], [0, 0], [Fraction(1, 2), Fraction(1, 2)], [0, Fraction(1, 2)]],
                mode=EXACT,
            ),
        )
        with pytest.raises(InvalidRightInverse):
            bs.coarse_grain(StochMatrix.identity(4, mode=EXACT), p, bad)


class TestUniformDilation:
    def test_two_state(self):
        T = bs.two_state(Fraction(1, 3), Fraction(2, 3))
        p = ProbVec([Fraction(1, 3), Fraction(2, 3)], mode=EXACT)
        dil = uniform_dilation(T, p)
        assert dil.partition.d == 3
        assert dil.partition.class_sizes == (1, 2)
        assert bs.validate(dil.matrix).bi
        assert bs.coarse_grain(dil.matrix, dil.partition, dil.right_inverse) == T

    def test_identity(self):
        T = StochMatrix.identity(2, mode=EXACT)
        dil = uniform_dilation(T, ProbVec([Fraction(1, 2), Fraction(1, 2)], mode=EXACT))
        assert dil.partition.d == 2
        assert dil.matrix == T

    def test_zero_component_rejected(self, demon):
        p = ProbVec([Fraction(1, 2), 0, 0, Fraction(1, 2)], mode=EXACT)
        with pytest.raises(ZeroComponent):
            uniform_dilation(demon, p)

    def test_non_fixed_point_rejected(self):
        T = bs.two_state(Fraction(1, 3), Fraction(2, 3))
        with pytest.raises(NotFixedPoint):
            uniform_dilation(T, ProbVec([Fraction(1, 2), Fraction(1, 2)], mode=EXACT))

    def test_float_rejected(self):
        T = bs.two_state(0.5, 0.5, mode=FLOAT)
        with pytest.raises(NotExact):
            uniform_dilation(T, ProbVec([0.5, 0.5], mode=FLOAT))

    def test_round_trip_on_random_rational(self):
        # random T with known positive rational fixed point: coarse grain a
        # random exact bi-stochastic S, whose uniform fixed point pushes to
        # p_n = d_n / d
        rng = np.random.default_rng(41)
        for _ in range(30):
            d = int(rng.integers(2, 11))
            p = random_partition(rng, d)
            if p.n > 5:
                continue
            S0 = random_permutation_mixture(rng, d, mode=EXACT)
            Y = bs.uniform_right_inverse(p)
            T = bs.coarse_grain(S0, p, Y)
            fp = ProbVec([Fraction(s, d) for s in p.class_sizes], mode=EXACT)
            dil = uniform_dilation(T, fp)
            assert bs.validate(dil.matrix).bi
            assert bs.coarse_grain(dil.matrix, dil.partition, dil.right_inverse) == T
