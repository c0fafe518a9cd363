import json

import pytest

from surfcond.abelian import FinAbGroup, UnsupportedRangeError
from surfcond.coefficients import (
    CoeffOverrides,
    UnspecifiedComparisonError,
    circle_row,
    comparison_map,
    spectrum,
)
from surfcond.em_cohomology import EmSpace, algebra_for

Z2 = FinAbGroup((2,))
Z3 = FinAbGroup((3,))
Z4 = FinAbGroup((4,))
Z6 = FinAbGroup((6,))


class TestSpectrumTables:
    def test_supercohomology_layers(self):
        t = spectrum("SH")
        assert str(t.entry(0)) == "C^x"
        assert str(t.entry(1)) == "Z/2"
        assert str(t.entry(2)) == "Z/2"
        assert t.entry(3).is_zero and t.entry(7).is_zero
        assert not t.twisted

    def test_superwitt_opaque_layer(self):
        t = spectrum("SW")
        assert t.entry(4).opaque == ("SW",)
        assert t.entry(5).is_zero

    def test_spin_circle_layer(self):
        t = spectrum("Spin")
        assert t.entry(4).circle_rank == 1

    def test_twisted_variant_same_entries(self):
        plain, tw = spectrum("SW"), spectrum("SW_twisted_by_Z2F")
        assert plain.entries == tw.entries
        assert tw.twisted and not plain.twisted

    def test_unknown_and_out_of_range(self):
        with pytest.raises(UnsupportedRangeError):
            spectrum("KO")
        with pytest.raises(UnsupportedRangeError):
            spectrum("Spin").entry(9)
        assert spectrum("SH").entry(-1).is_zero


class TestCircleRows:
    def test_degree2_base_values(self):
        row = circle_row(Z2, 2)
        assert str(row.entry(2)) == "Z/2"  # dual(E)
        assert str(row.entry(4)) == "Z/4"  # Quad(Z/2, circle)
        assert str(row.entry(5)) == "Z/2"
        assert str(row.entry(6)) == "Z/2"
        assert row.entry(1).is_zero and row.entry(3).is_zero

    def test_degree2_larger_cyclic(self):
        assert str(circle_row(Z4, 2).entry(4)) == "Z/8"
        assert str(circle_row(FinAbGroup((8,)), 2).entry(4)) == "Z/16"
        assert str(circle_row(Z4, 2).entry(5)) == "Z/2"

    def test_degree2_odd_cyclic(self):
        row = circle_row(Z3, 2)
        assert str(row.entry(2)) == "Z/3"
        assert row.entry(5).is_zero

    def test_degree4_row(self):
        row = circle_row(Z4, 4)
        assert str(row.entry(4)) == "Z/4"
        assert str(row.entry(6)) == "Z/2"
        assert str(row.entry(7)) == "Z/2"  # dual of the 2-torsion subgroup
        assert str(circle_row(Z6, 4).entry(7)) == "Z/2"
        assert circle_row(Z3, 4).entry(7).is_zero

    def test_out_of_table_raises(self):
        row = circle_row(Z4, 2)
        assert not row.has_entry(6)
        with pytest.raises(UnsupportedRangeError):
            row.entry(6)
        with pytest.raises(UnsupportedRangeError):
            circle_row(Z2, 3)


class TestComparisonMap:
    def test_fundamental_class_hits_order_two_element(self):
        alg = algebra_for(EmSpace.from_group(Z4, 2))
        iota = alg.fundamental_class()
        assert comparison_map(Z4, 2, 2, iota) == (2,)  # order-2 element of Z/4

    def test_zero_class_maps_to_none(self):
        alg = algebra_for(EmSpace.from_group(Z2, 2))
        assert comparison_map(Z2, 2, 6, alg.zero_class(6)) is None

    def test_cancelling_sum_maps_to_none(self):
        # i2^3 + i2^3 = 0 never reaches the table; a declared-zero monomial does
        alg = algebra_for(EmSpace.from_group(Z2, 2))
        iota = alg.fundamental_class()
        sq1_sq = alg.sq(1, iota) * alg.sq(1, iota)
        assert comparison_map(Z2, 2, 6, sq1_sq) is None

    def test_undeclared_class_raises(self):
        alg = algebra_for(EmSpace.from_group(Z2, 2))
        iota = alg.fundamental_class()
        with pytest.raises(UnspecifiedComparisonError):
            comparison_map(Z2, 2, 3, alg.sq(1, iota))


class TestOverrides:
    def test_round_trip_through_json(self, tmp_path):
        path = tmp_path / "overrides.json"
        path.write_text(
            json.dumps(
                {
                    "spectrum": {"SW": {"4": "Z/2"}},
                    "circle_row": {"Z/2|2": {"5": "0"}},
                    "comparison": {"Z/2|2|5": {"Sq2 Sq1(i2)": None}},
                }
            )
        )
        ov = CoeffOverrides.load(str(path))
        t = spectrum("SW", ov)
        assert str(t.entry(4)) == "Z/2"
        assert "[override]" in t.provenance[4]
        row = circle_row(Z2, 2, ov)
        assert row.entry(5).is_zero
        assert row.comparison[5]["Sq2 Sq1(i2)"] is None
        assert any("override" in n for n in ov.notes)

    def test_expr_parsing_variants(self, tmp_path):
        path = tmp_path / "overrides.json"
        path.write_text(json.dumps({"spectrum": {"SH": {"3": "Z/2 x C^x"}}}))
        t = spectrum("SH", CoeffOverrides.load(str(path)))
        e = t.entry(3)
        assert e.circle_rank == 1 and str(e.finite) == "Z/2"
