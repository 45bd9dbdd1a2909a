"""
Tests for homomorphism censuses and the exponential formulas behind them.
"""

from math import factorial

import pytest
from sympy import npartitions

from orbichern.exceptions import PreconditionError, UnsupportedGroupError
from orbichern.grp import Cyclic, FreeAbelian, Presentation, Trivial, count_homs, j_sequence
from orbichern.homcount import (
    CycleType,
    census_sym,
    census_wreath,
    commuting_tuple_count,
    hom_count,
    sym_total_via_formula,
    transitive_counts,
    type_count_formula,
    wreath_total_via_formula,
)


class TestCycleType:
    """Cycle types [c_1..c_n]."""

    def test_weight_checked(self):
        with pytest.raises(PreconditionError):
            CycleType((1, 1, 1))
        with pytest.raises(PreconditionError):
            CycleType((-1, 1))

    def test_all_of_weight(self):
        assert [str(c) for c in CycleType.all_of_weight(3)] == ["[3,0,0]", "[1,1,0]", "[0,0,1]"]
        assert len(CycleType.all_of_weight(5)) == npartitions(5)
        assert CycleType.all_of_weight(0) == [CycleType(())]

    def test_class_sizes_sum_to_factorial(self):
        for n in range(1, 6):
            assert sum(c.cardinality for c in CycleType.all_of_weight(n)) == factorial(n)

    def test_accessors(self):
        c = CycleType.from_parts(5, {2: 2, 1: 1})
        assert c.c == (1, 2, 0, 0, 0)
        assert c.length == 3
        assert c.items() == [(1, 1), (2, 2)]
        assert c.cardinality == 15


class TestSymmetricCensus:
    """Hom(A, S_n) by orbit type."""

    def test_infinite_cyclic(self):
        census = census_sym(FreeAbelian(1), 3)
        assert census[(3, 0, 0)] == 1
        assert census[(1, 1, 0)] == 3
        assert census[(0, 0, 1)] == 2
        assert census.total == 6

    def test_free_abelian_rank_two(self):
        assert census_sym(FreeAbelian(2), 3).total == 18

    @pytest.mark.parametrize("spec", [FreeAbelian(1), FreeAbelian(2), Cyclic(2), Cyclic(3), Trivial()])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_formula_matches_census(self, spec, n):
        series = sym_total_via_formula(j_sequence(spec, 4), 4)
        assert series[n] * factorial(n) == census_sym(spec, n).total

    def test_partition_counts(self):
        series = sym_total_via_formula(j_sequence(FreeAbelian(2), 5), 5)
        assert list(series.coeffs) == [npartitions(n) for n in range(6)]

    @pytest.mark.parametrize("spec", [FreeAbelian(2), Cyclic(2), Presentation(("a", "b"))])
    def test_types_from_transitive_counts(self, spec):
        transitive = transitive_counts(spec, 4)
        census = census_sym(spec, 4)
        for c in CycleType.all_of_weight(4):
            assert type_count_formula(c, transitive) == census[c]

    def test_short_j_sequence(self):
        with pytest.raises(PreconditionError):
            sym_total_via_formula(j_sequence(FreeAbelian(2), 2), 4)

    def test_exports(self):
        census = census_sym(FreeAbelian(1), 3)
        obj = census.to_json_obj()
        assert obj["target"] == "S3"
        assert obj["total"] == 6
        assert obj["by_type"][0] == {"type": [3, 0, 0], "count": 1}
        lines = census.to_csv().splitlines()
        assert lines[0] == "type,count"
        assert lines[1] == '"[3,0,0]",1'


class TestWreathCensus:
    """Hom(A, G wr S_n) by the type of the S_n-projection."""

    def test_totals(self, z2):
        assert census_wreath(FreeAbelian(1), z2, 2).total == 8
        assert census_wreath(FreeAbelian(2), z2, 2).total == 40
        assert census_wreath(Cyclic(2), z2, 2).total == 6

    def test_projection_types(self, z2):
        census = census_wreath(FreeAbelian(1), z2, 2)
        # four elements over the identity, four over the swap
        assert census[(2, 0)] == 4
        assert census[(0, 1)] == 4

    @pytest.mark.parametrize("spec", [FreeAbelian(1), FreeAbelian(2), Cyclic(2), Trivial()])
    def test_formula_matches_census(self, z2, spec):
        series = wreath_total_via_formula(spec, z2, 2)
        for n in (1, 2):
            expected = census_wreath(spec, z2, n).total
            assert series[n] * z2.order ** n * factorial(n) == expected

    def test_formula_z3(self, z3):
        series = wreath_total_via_formula(FreeAbelian(1), z3, 2)
        assert series[2] * 9 * 2 == census_wreath(FreeAbelian(1), z3, 2).total

    def test_known_coefficient(self, z2):
        assert wreath_total_via_formula(FreeAbelian(2), z2, 3)[2] == 5

    def test_presentation_rejected(self, z2):
        with pytest.raises(UnsupportedGroupError):
            wreath_total_via_formula(Presentation(("a",)), z2, 2)


class TestCommutingTuples:
    """|Hom(Z^m, G)| through centralizers."""

    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_matches_brute_force(self, s3, m):
        expected = 1 if m == 0 else count_homs(FreeAbelian(m), s3)
        assert commuting_tuple_count(s3, m) == expected

    def test_class_equation(self, s3, z3):
        assert commuting_tuple_count(s3, 2) == s3.order * len(s3.conjugacy_classes())
        assert commuting_tuple_count(z3, 3) == 27

    def test_hom_count(self, s3):
        assert hom_count(Cyclic(3), s3) == 3
