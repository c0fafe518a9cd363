import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfcond.abelian import (
    CIRCLE,
    Z2_TARGET,
    BudgetError,
    _quad_closed_form,
    FinAbGroup,
    GroupExpr,
    dual,
    ext_group,
    hom_group,
    parse_group,
    quad_group,
    quad_group_brute,
    quotient_by_subgroup_image,
    smith_normal_form,
    two_torsion,
)

small_groups = st.lists(st.sampled_from([2, 3, 4, 5, 8, 9]), max_size=3).map(
    FinAbGroup.from_factors
)


class TestFinAbGroup:
    def test_invariant_factor_normalization(self):
        assert FinAbGroup.from_factors([2, 3]) == FinAbGroup((6,))
        assert FinAbGroup.from_factors([2, 2]) == FinAbGroup((2, 2))
        assert FinAbGroup.from_factors([4, 6]) == FinAbGroup((2, 12))
        assert FinAbGroup.from_factors([1, 1]).is_trivial

    def test_divisibility_chain_enforced(self):
        with pytest.raises(ValueError):
            FinAbGroup((4, 2))

    def test_element_arithmetic(self):
        G = FinAbGroup((2, 4))
        assert G.add((1, 3), (1, 2)) == (0, 1)
        assert G.neg((1, 3)) == (1, 1)
        assert G.element_order((0, 2)) == 2
        assert G.element_order((1, 1)) == 4
        assert len(list(G.elements())) == 8

    @given(small_groups)
    def test_order_is_product_of_factors(self, G):
        assert G.order == len(list(G.elements()))


class TestSmithNormalForm:
    def test_cyclic_presentation(self):
        assert smith_normal_form([[6]]) == FinAbGroup((6,))
        assert smith_normal_form([[2, 0], [0, 3]]) == FinAbGroup((6,))

    def test_trivial(self):
        assert smith_normal_form([[1]]).is_trivial

    def test_infinite_cokernel_rejected(self):
        with pytest.raises(ValueError):
            smith_normal_form([[0, 2]])

    @given(
        st.lists(
            st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
            min_size=3,
            max_size=5,
        )
    )
    @settings(max_examples=60)
    def test_divisibility_chain_holds(self, rows):
        # pad with a diagonal so the cokernel is finite
        rows = rows + [[12 if c == r else 0 for c in range(3)] for r in range(3)]
        G = smith_normal_form(rows)
        for a, b in zip(G.invariant_factors, G.invariant_factors[1:]):
            assert b % a == 0


class TestFunctors:
    @given(small_groups)
    def test_dual_is_involutive_and_isomorphic(self, A):
        assert dual(dual(A)) == A
        assert dual(A).invariant_factors == A.invariant_factors

    @given(small_groups, small_groups)
    @settings(max_examples=40)
    def test_hom_order_matches_enumeration(self, A, B):
        if A.order * B.order > 72:
            return
        count = 0
        for images in itertools.product(list(B.elements()), repeat=len(A.invariant_factors)):
            if all(
                d % B.element_order(img) == 0
                for img, d in zip(images, A.invariant_factors)
            ):
                count += 1
        assert count == hom_group(A, B).order

    @given(small_groups, small_groups)
    @settings(max_examples=40)
    def test_ext_matches_quotient_presentation(self, A, B):
        # Ext(Z_d, B) = B / dB, computed through an independent presentation
        factors = []
        for d in A.invariant_factors:
            rank = len(B.invariant_factors)
            rows = [[B.invariant_factors[r] if c == r else 0 for c in range(rank)] for r in range(rank)]
            rows += [[d if c == r else 0 for c in range(rank)] for r in range(rank)]
            if rows:
                factors.extend(smith_normal_form(rows).invariant_factors)
        assert FinAbGroup.from_factors(factors) == ext_group(A, B)

    @given(small_groups)
    def test_two_torsion_by_enumeration(self, A):
        count = sum(1 for x in A.elements() if A.element_order(x) <= 2)
        assert two_torsion(A).order == count


class TestQuadraticForms:
    def test_cyclic_closed_forms(self):
        assert quad_group(FinAbGroup((2,)), CIRCLE) == FinAbGroup((4,))
        assert quad_group(FinAbGroup((4,)), CIRCLE) == FinAbGroup((8,))
        assert quad_group(FinAbGroup((3,)), CIRCLE) == FinAbGroup((3,))
        assert quad_group(FinAbGroup((2,)), Z2_TARGET) == FinAbGroup((2,))
        assert quad_group(FinAbGroup((3,)), Z2_TARGET).is_trivial

    @pytest.mark.parametrize(
        "factors", [(2, 2), (2, 4), (4, 4), (2, 8), (2, 2, 2), (3, 3)]
    )
    def test_brute_force_agrees_with_closed_form(self, factors):
        E = FinAbGroup.from_factors(factors)
        for target in (CIRCLE, Z2_TARGET):
            assert quad_group_brute(E, target) == _quad_closed_form(E, target)
            assert quad_group(E, target) == _quad_closed_form(E, target)

    def test_budget_guard(self):
        with pytest.raises(BudgetError):
            quad_group(FinAbGroup((4, 4, 8)), CIRCLE)

    def test_unknown_target_rejected(self):
        with pytest.raises(ValueError):
            quad_group(FinAbGroup((2,)), "Z3")


class TestQuotients:
    def test_cyclic_quotient(self):
        q = quotient_by_subgroup_image(GroupExpr.of(FinAbGroup((4,))), [(2,)])
        assert q.finite == FinAbGroup((2,))

    def test_diagonal_quotient(self):
        q = quotient_by_subgroup_image(GroupExpr.of(FinAbGroup((2, 2))), [(1, 1)])
        assert q.finite == FinAbGroup((2,))

    def test_opaque_and_circle_parts_pass_through(self):
        expr = GroupExpr(finite=FinAbGroup((4,)), circle_rank=1, opaque=("SW",))
        q = quotient_by_subgroup_image(expr, [(2,)])
        assert q.circle_rank == 1 and q.opaque == ("SW",)

    def test_generator_outside_group_rejected(self):
        with pytest.raises(ValueError):
            quotient_by_subgroup_image(GroupExpr.of(FinAbGroup((2,))), [(3,)])


class TestParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("Z/2", (2,)),
            ("Z2", (2,)),
            ("Z/2 x Z/4", (2, 4)),
            ("Z/2 ⊕ Z/4", (2, 4)),
            ("Z/2 x Z/3", (6,)),
            ("0", ()),
            ("1", ()),
        ],
    )
    def test_literals(self, text, expected):
        assert parse_group(text) == FinAbGroup(expected)

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            parse_group("Z/x")
