import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfcond.abelian import FinAbGroup, UnsupportedRangeError
from surfcond.em_cohomology import (
    CapExceededError,
    EmSpace,
    algebra_for,
    poincare_series,
    reduced_smash_basis,
    serre_generators,
)
from surfcond.steenrod import SteenrodMonomial


class TestSerreGenerators:
    def test_k_z2_2(self):
        gens = serre_generators(2, 2, 7)
        names = [(g.squares, g.bockstein, d) for g, d in gens]
        assert ((), 0, 2) in names  # iota
        assert ((1,), 0, 3) in names  # Sq1 iota
        assert ((2, 1), 0, 5) in names  # Sq2 Sq1 iota
        assert ((3, 1), 0, 6) not in names  # excess 2: squares, not a generator
        # excess-2 words square instead of generating
        assert all(not g.squares or g.squares[0] < sum(g.squares[1:]) + 2 for g, _ in gens)

    def test_k_z4_2_replaces_sq1_by_marker(self):
        gens = serre_generators(4, 2, 7)
        assert all(not (g.squares and g.squares[-1] == 1) for g, _ in gens)
        assert any(g.bockstein == 2 and not g.squares for g, _ in gens)
        assert any(g.bockstein == 2 and g.squares == (2,) for g, _ in gens)

    def test_k_z2k_1_unsupported(self):
        with pytest.raises(UnsupportedRangeError):
            serre_generators(4, 1, 6)

    def test_odd_modulus_contributes_nothing(self):
        assert serre_generators(3, 2, 8) == []


class TestPoincareSeries:
    def test_k_z2_2(self):
        assert poincare_series(EmSpace.single(2, 2), 7) == [1, 0, 1, 1, 1, 2, 2, 2]

    def test_k_z2_1_is_polynomial_on_one_generator(self):
        assert poincare_series(EmSpace.single(2, 1), 8) == [1] * 9

    def test_odd_factor_is_unit_algebra(self):
        assert poincare_series(EmSpace.single(3, 2), 6) == [1, 0, 0, 0, 0, 0, 0]

    def test_kunneth_convolution(self):
        cap = 8
        a = poincare_series(EmSpace.single(2, 2), cap)
        b = poincare_series(EmSpace.single(4, 2), cap)
        prod = poincare_series(EmSpace.single(2, 2).product(EmSpace.single(4, 2)), cap)
        conv = [sum(a[k] * b[d - k] for k in range(d + 1)) for d in range(cap + 1)]
        assert prod == conv


class TestSteenrodAction:
    def test_instability_top_square(self):
        alg = algebra_for(EmSpace.single(2, 2), 6)
        iota = alg.fundamental_class()
        assert alg.sq(2, iota) == iota * iota
        assert alg.sq(3, iota).is_zero
        assert alg.sq(0, iota) == iota

    def test_sq1_vanishes_on_z4_class(self):
        alg = algebra_for(EmSpace.single(4, 2), 6)
        iota = alg.fundamental_class()
        assert alg.sq(1, iota).is_zero

    def test_marked_generator_action(self):
        alg = algebra_for(EmSpace.single(4, 2), 8)
        iota = alg.fundamental_class()
        b2 = next(
            gi for gi, g in enumerate(alg.generators)
            if g.word == SteenrodMonomial((), bockstein=2)
        )
        marked = alg.generator_class(b2)
        assert alg.sq(1, marked).is_zero  # Sq1 b2 = 0
        assert not alg.sq(2, marked).is_zero

    def test_relation_in_k_z2_2_degree_six(self):
        # Sq1(iota * Sq1 iota) = Sq1 iota * Sq1 iota and Sq1 Sq2 Sq1 iota
        # equals the same square, so the sum is a cocycle.
        alg = algebra_for(EmSpace.single(2, 2), 8)
        iota = alg.fundamental_class()
        x3 = alg.sq(1, iota)
        x5 = alg.sq(2, x3)
        assert alg.sq(1, iota * x3 + x5).is_zero

    @given(
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=3),
    )
    @settings(max_examples=60)
    def test_cartan_formula(self, i, da, db):
        alg = algebra_for(EmSpace.single(2, 2).product(EmSpace.single(2, 2)), 12)
        basis_a = alg.basis(da + 2)
        basis_b = alg.basis(db + 2)
        if not basis_a or not basis_b:
            return
        x = alg.monomial_class(basis_a[0])
        y = alg.monomial_class(basis_b[-1])
        if x.degree + y.degree + i > alg.cap:
            return
        lhs = alg.sq(i, x * y)
        rhs = alg.zero_class(lhs.degree)
        for j in range(i + 1):
            rhs = rhs + alg.sq(j, x) * alg.sq(i - j, y)
        assert lhs == rhs

    def test_cap_enforced(self):
        alg = algebra_for(EmSpace.single(2, 2), 5)
        iota = alg.fundamental_class()
        with pytest.raises(CapExceededError):
            alg.sq(2, iota * iota)
        with pytest.raises(CapExceededError):
            _ = (iota * iota) * (iota * iota)


class TestSmash:
    def test_reduced_smash_degree_five(self):
        X = EmSpace.single(2, 2)
        classes = reduced_smash_basis(X, X, 5, cap=9)
        assert len(classes) == 2
        assert all(not c.is_zero for c in classes)

    def test_reduced_smash_degree_four(self):
        X = EmSpace.single(2, 2)
        assert len(reduced_smash_basis(X, X, 4, cap=9)) == 1

    def test_nothing_below_connectivity(self):
        X = EmSpace.single(2, 2)
        assert reduced_smash_basis(X, X, 3, cap=9) == []


class TestFormatting:
    def test_generator_names(self):
        alg = algebra_for(EmSpace.single(2, 2), 6)
        names = {alg.generator_name(gi) for gi in range(len(alg.generators))}
        assert {"i2", "Sq1(i2)", "Sq2 Sq1(i2)"} <= names

    def test_product_factors_get_primes(self):
        alg = algebra_for(EmSpace.single(2, 2).product(EmSpace.single(2, 2)), 4)
        names = {alg.generator_name(gi) for gi in range(len(alg.generators))}
        assert {"i2", "i2'"} <= names

    def test_from_group_splits_two_part(self):
        space = EmSpace.from_group(FinAbGroup.from_factors([12]), 2)
        assert set(space.factors) == {(4, 2), (3, 2)}
