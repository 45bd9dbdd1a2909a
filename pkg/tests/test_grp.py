"""
Tests for permutation groups, wreath products and subgroup growth.
"""

from itertools import product
from math import factorial

import pytest

from orbichern import grp
from orbichern.config import EngineConfig
from orbichern.exceptions import (
    BudgetExceededError,
    ConsistencyError,
    GroupCapError,
    PreconditionError,
    UnsupportedGroupError,
)
from orbichern.grp import (
    CLOSED_FORM,
    ENUMERATED,
    Cyclic,
    FreeAbelian,
    JSequence,
    PAdic,
    Presentation,
    Trivial,
    WreathElement,
    close_group,
    commutator,
    compose,
    count_homs,
    count_transitive_homs,
    cyclic_group,
    dihedral_group,
    direct_product_with_z,
    enumerate_homs,
    free_abelian_index_count_explicit,
    invert,
    j_sequence,
    j_sequence_times_z,
    orbit_partition,
    orbit_type,
    perm_from_cycles,
    perm_to_cycles,
    search_size,
    subgroup_type,
    symmetric_group,
    to_presentation,
    u_sequence,
    wreath_act,
    wreath_mul,
    wreath_product,
)
from orbichern.qexact import free_abelian_j

S3_PRESENTATION = Presentation(("a", "b"), (((0, 1),) * 2, ((1, 1),) * 3, ((0, 1), (1, 1)) * 2))


class TestPermutations:
    """Array-form permutations and cycle notation."""

    def test_cycles_round_trip_text(self):
        p = perm_from_cycles([[1, 2, 3], [4, 5]])
        assert p == (1, 2, 0, 4, 3)
        assert perm_to_cycles(p) == "(1 2 3)(4 5)"

    def test_identity_text(self):
        assert perm_to_cycles((0, 1, 2)) == "()"

    def test_explicit_degree_pads(self):
        assert perm_from_cycles([[1, 2]], 4) == (1, 0, 2, 3)

    def test_overlapping_cycles_rejected(self):
        with pytest.raises(PreconditionError):
            perm_from_cycles([[1, 2], [2, 3]])

    def test_degree_too_small(self):
        with pytest.raises(PreconditionError):
            perm_from_cycles([[1, 5]], 3)

    def test_composition_is_right_to_left(self):
        p = perm_from_cycles([[1, 2]], 3)
        q = perm_from_cycles([[2, 3]], 3)
        # (1 2)(2 3) sends 2 -> 3 -> 3 and 3 -> 2 -> 1
        assert perm_to_cycles(compose(p, q)) == "(1 2 3)"
        assert compose(p, invert(p)) == (0, 1, 2)

    def test_orbits(self):
        gens = [perm_from_cycles([[1, 3]], 4)]
        assert orbit_partition(gens, 4) == [[0, 2], [1], [3]]
        assert orbit_type(gens, 4) == (2, 1, 0, 0)


class TestFiniteGroup:
    """Enumerated permutation groups."""

    def test_standard_orders(self):
        assert symmetric_group(4).order == 24
        assert cyclic_group(5).order == 5
        assert dihedral_group(4).order == 8
        assert symmetric_group(0).order == 1

    def test_identity_first(self, s3):
        assert s3.elements[0] == (0, 1, 2)
        assert s3.mul(0, 4) == 4

    def test_inverse_and_power(self, s3):
        for i in range(s3.order):
            assert s3.mul(i, s3.inverse(i)) == 0
        r = s3.index(perm_from_cycles([[1, 2, 3]]))
        assert s3.power(r, 3) == 0
        assert s3.power(r, -1) == s3.inverse(r)

    def test_conjugacy_classes(self, s3):
        sizes = sorted(len(c) for c in s3.conjugacy_classes())
        assert sizes == [1, 2, 3]
        assert s3.conjugacy_classes()[0] == [0]

    def test_centralizer(self, s3):
        assert s3.centralizer(0) == list(range(6))
        r = s3.index(perm_from_cycles([[1, 2, 3]]))
        assert len(s3.centralizer(r)) == 3

    def test_abelian(self, s3, z3):
        assert z3.is_abelian()
        assert not s3.is_abelian()

    def test_close_group_generators(self):
        group = close_group([perm_from_cycles([[1, 2]], 3), perm_from_cycles([[1, 2, 3]])])
        assert group == symmetric_group(3)
        assert len(group.generators) == 2

    def test_group_cap(self):
        gens = symmetric_group(5).generators
        with pytest.raises(GroupCapError):
            close_group([symmetric_group(5).elements[g] for g in gens], cap=50)

    def test_group_cap_from_config(self, monkeypatch):
        monkeypatch.setattr(grp, "default_config", lambda: EngineConfig(group_cap=5))
        with pytest.raises(GroupCapError):
            close_group([perm_from_cycles([[1, 2]], 3), perm_from_cycles([[1, 2, 3]])])

    def test_repeated_generators_keep_their_slots(self):
        swap = perm_from_cycles([[1, 2]], 2)
        assert close_group([swap, swap]).generators == (1, 1)

    def test_from_elements_checks_closure(self):
        with pytest.raises(PreconditionError):
            symmetric_group(3).subgroup([0, 1, 2])

    def test_subgroup(self, s3):
        r = s3.index(perm_from_cycles([[1, 2, 3]]))
        sub = s3.subgroup([0, r, s3.inverse(r)])
        assert sub.order == 3
        assert sub.is_abelian()

    def test_foreign_element(self, s3):
        with pytest.raises(PreconditionError):
            s3.index((1, 0, 2, 3))


class TestWreathProduct:
    """G wr S_n as pairs and as permutations."""

    def test_order(self, z2, s3):
        assert wreath_product(z2, 2).order == 8
        assert wreath_product(s3, 2).order == 72
        assert wreath_product(z2, 3).order == 48

    def test_identity_first(self, z2):
        wr = wreath_product(z2, 3)
        assert wr.element(0) == WreathElement((0, 0, 0), (0, 1, 2))

    @pytest.mark.parametrize("n", [2, 3])
    def test_pair_product_matches_embedding(self, z2, n):
        wr = wreath_product(z2, n)
        for i, j in product(range(wr.order), repeat=2):
            expected = wreath_mul(wr.element(i), wr.element(j), z2)
            assert wr.element(wr.group.mul(i, j)) == expected

    def test_action_is_left_action(self, s3):
        wr = wreath_product(s3, 2)
        points = list(product(range(3), repeat=2))
        for i in range(0, wr.order, 7):
            for j in range(0, wr.order, 5):
                x, y = wr.element(i), wr.element(j)
                xy = wreath_mul(x, y, s3)
                for p in points:
                    assert wreath_act(xy, p, s3.elements) == wreath_act(
                        x, wreath_act(y, p, s3.elements), s3.elements)

    def test_action_moves_coordinates(self, z2):
        w = WreathElement((1, 0), (1, 0))
        # coordinate 0 receives x_1 flipped, coordinate 1 receives x_0
        assert wreath_act(w, (0, 0), z2.elements) == (1, 0)
        assert wreath_act(w, (1, 0), z2.elements) == (1, 1)

    def test_mismatched_lengths(self):
        with pytest.raises(PreconditionError):
            WreathElement((0,), (0, 1))

    def test_index_round_trip(self, z2):
        wr = wreath_product(z2, 2)
        for i in range(wr.order):
            assert wr.index(wr.element(i)) == i


class TestPresentations:
    """Built-in families and finite presentations."""

    def test_text(self):
        assert FreeAbelian(1).to_text() == "Z"
        assert FreeAbelian(3).to_text() == "Z^3"
        assert Cyclic(4).to_text() == "Z/4"
        assert PAdic(3).to_text() == "Zp(3)"
        assert Trivial().to_text() == "1"
        assert Presentation(("a", "b"), (commutator(0, 1),)).to_text() == "<a,b | abAB>"

    def test_invalid_families(self):
        with pytest.raises(PreconditionError):
            FreeAbelian(0)
        with pytest.raises(PreconditionError):
            Cyclic(0)
        with pytest.raises(PreconditionError):
            PAdic(4)

    def test_undeclared_generator(self):
        with pytest.raises(PreconditionError):
            Presentation(("a",), (((1, 1),),))

    def test_free_abelian_presentation(self):
        pres = to_presentation(FreeAbelian(3))
        assert pres.generators == ("a", "b", "c")
        assert len(pres.relators) == 3

    def test_padic_has_no_presentation(self):
        with pytest.raises(UnsupportedGroupError):
            to_presentation(PAdic(2))

    def test_direct_product_with_z(self):
        pres = direct_product_with_z(Presentation(("t",)))
        assert pres.generators == ("t", "t'")
        assert len(pres.relators) == 1


class TestHomomorphisms:
    """Backtracking homomorphism search."""

    def test_free_abelian_rank_two(self, s3):
        # commuting pairs: |G| times the number of conjugacy classes
        assert count_homs(FreeAbelian(2), s3) == 6 * 3

    def test_cyclic_source(self, s3):
        # elements of S3 with x^2 = 1
        assert count_homs(Cyclic(2), s3) == 4
        assert count_homs(Cyclic(3), s3) == 3

    def test_trivial_source(self, s3):
        assert list(enumerate_homs(Trivial(), s3)) == [()]

    def test_free_group(self, s3):
        assert count_homs(Presentation(("a", "b")), s3) == 36

    def test_images_satisfy_relators(self, s3):
        for a, b in enumerate_homs(S3_PRESENTATION, s3):
            assert s3.power(a, 2) == 0
            assert s3.power(b, 3) == 0
        # Hom(S3, S3): 6 automorphisms, 3 maps onto a Z/2, the trivial map
        assert count_homs(S3_PRESENTATION, s3) == 10

    def test_lexicographic_order(self, z2):
        assert list(enumerate_homs(FreeAbelian(2), z2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_budget(self):
        assert search_size(FreeAbelian(3), symmetric_group(4)) == 24 ** 3
        with pytest.raises(BudgetExceededError) as info:
            list(enumerate_homs(FreeAbelian(3), symmetric_group(4), budget=100))
        assert info.value.context["required"] == 24 ** 3
        assert info.value.context["budget"] == 100

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv("ORBICHERN_BUDGET", "10")
        with pytest.raises(BudgetExceededError):
            count_homs(FreeAbelian(2), symmetric_group(4))

    def test_transitive(self):
        assert count_transitive_homs(FreeAbelian(1), 4) == factorial(3)
        assert count_transitive_homs(FreeAbelian(2), 3) == 4 * factorial(2)


class TestSubgroupGrowth:
    """j-sequences from closed forms and from enumeration."""

    def test_closed_forms(self):
        assert j_sequence(FreeAbelian(2), 6).as_list() == [1, 3, 4, 7, 6, 12]
        assert j_sequence(Cyclic(4), 4).as_list() == [1, 1, 0, 1]
        assert j_sequence(Trivial(), 3).as_list() == [1, 0, 0]
        assert j_sequence(PAdic(2), 4).as_list() == [1, 1, 0, 1]

    def test_presentation_matches_closed_form(self):
        pres = to_presentation(FreeAbelian(2))
        seq = j_sequence(pres, 4)
        assert seq.as_list() == j_sequence(FreeAbelian(2), 4).as_list()
        assert seq.provenance[3] == ENUMERATED
        assert j_sequence(FreeAbelian(2), 2).provenance[2] == CLOSED_FORM

    def test_free_group_index_two(self):
        assert j_sequence(Presentation(("a", "b")), 2).as_list() == [1, 3]

    def test_cyclic_presentation(self):
        assert j_sequence(to_presentation(Cyclic(6)), 6).as_list() == [1, 1, 1, 0, 0, 1]

    def test_accessors(self):
        seq = j_sequence(FreeAbelian(2), 3)
        assert seq[2] == 3
        assert seq.rmax == 3
        with pytest.raises(PreconditionError):
            seq[4]
        with pytest.raises(PreconditionError):
            seq.require(5)
        obj = seq.to_json_obj()
        assert obj["source"] == "Z^2"
        assert [entry["value"] for entry in obj["j"]] == [1, 3, 4]

    def test_first_entry_must_be_one(self):
        with pytest.raises(ConsistencyError):
            JSequence(Trivial(), {1: 2})

    def test_rmax_positive(self):
        with pytest.raises(PreconditionError):
            j_sequence(Trivial(), 0)

    def test_u_sequence_of_s3(self):
        assert u_sequence(S3_PRESENTATION, 3) == {1: 1, 2: 1, 3: 1}

    def test_times_z_formula(self):
        assert j_sequence_times_z(Cyclic(2), 4) == {1: 1, 2: 3, 3: 1, 4: 3}
        direct = j_sequence(direct_product_with_z(Cyclic(2)), 4)
        assert dict(direct.values) == j_sequence_times_z(Cyclic(2), 4)

    def test_times_z_nonabelian(self):
        direct = j_sequence(direct_product_with_z(S3_PRESENTATION), 3)
        assert dict(direct.values) == j_sequence_times_z(S3_PRESENTATION, 3)

    @pytest.mark.parametrize("m,k", [(2, 6), (3, 4), (3, 6), (4, 8)])
    def test_explicit_sum(self, m, k):
        assert free_abelian_index_count_explicit(m, k) == free_abelian_j(m, k)

    def test_subgroup_types(self):
        assert subgroup_type(FreeAbelian(2), 3) == FreeAbelian(2)
        assert subgroup_type(Cyclic(6), 2) == Cyclic(3)
        assert subgroup_type(Cyclic(6), 4) is None
        assert subgroup_type(Trivial(), 1) == Trivial()
        with pytest.raises(UnsupportedGroupError):
            subgroup_type(S3_PRESENTATION, 2)
