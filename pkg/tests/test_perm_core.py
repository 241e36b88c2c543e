"""Unit tests for tamlab.domain.perm_core and tamlab.domain.catalog.

Tests verify:
1. Cycle notation parsing and composition order
2. Element enumeration, canonical order and the order cap
3. Subgroup lattices against exhaustive search
4. Cosets, double cosets and conjugation
"""

import pytest

from tamlab.domain.catalog import (
    alternating,
    cyclic,
    dihedral,
    klein_four,
    quaternion,
    symmetric,
    trivial_group,
)
from tamlab.domain.errors import (
    InvalidPermutation,
    NotASubgroup,
    OrderCapExceeded,
    SpecParseError,
)
from tamlab.domain.perm_core import (
    LATTICE_CACHE_SIZE,
    Permutation,
    Subgroup,
    brute_force_subgroups,
    conjugate_subgroup,
    double_cosets,
    enumerate_elements,
    left_cosets,
    right_cosets,
    subgroup_lattice,
    _build_lattice,
)


def _transposition_subgroup(G):
    """The subgroup generated by (1 2)."""
    return G.generate([Permutation.from_cycles("(1 2)", G.degree)])


# =============================================================================
# Permutations
# =============================================================================

class TestPermutation:
    """Tests for Permutation."""

    def test_cycles_compose_right_to_left(self):
        """(1 2)(2 3) applies (2 3) first."""
        p = Permutation.from_cycles("(1 2)(2 3)", 3)
        assert p.images == (1, 2, 0)
        assert p.cycle_string() == "(1 2 3)"

    def test_identity_strings(self):
        """Empty cycles and () should parse to the identity."""
        assert Permutation.from_cycles("()", 3).is_identity()
        assert Permutation.from_cycles("", 4).is_identity()
        assert Permutation.identity(3).cycle_string() == "()"

    def test_composition_is_function_composition(self):
        """(a*b)(x) = a(b(x))."""
        a = Permutation.from_cycles("(1 2)", 3)
        b = Permutation.from_cycles("(2 3)", 3)
        ab = a * b
        for x in range(3):
            assert ab(x) == a(b(x))

    def test_inverse(self):
        """p times its inverse should be the identity on both sides."""
        p = Permutation.from_cycles("(1 3 4)(2 5)", 5)
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    def test_rejects_repeated_point(self):
        """A point repeated inside a cycle should fail."""
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles("(1 1)", 3)

    def test_rejects_point_out_of_range(self):
        """A point above the degree should fail."""
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles("(1 4)", 3)

    def test_rejects_stray_text(self):
        """Text outside the cycles should fail."""
        with pytest.raises(InvalidPermutation):
            Permutation.from_cycles("(1 2) x", 3)

    def test_rejects_non_bijection(self):
        """Images that repeat should fail."""
        with pytest.raises(InvalidPermutation):
            Permutation((0, 0, 1))

    def test_degree_mismatch(self):
        """Composing different degrees should fail."""
        with pytest.raises(InvalidPermutation):
            Permutation.identity(2) * Permutation.identity(3)


# =============================================================================
# Groups
# =============================================================================

class TestGroups:
    """Tests for PermGroup construction and the catalog families."""

    @pytest.mark.parametrize("build, order", [
        (trivial_group, 1),
        (lambda: cyclic(1), 1),
        (lambda: cyclic(4), 4),
        (lambda: dihedral(1), 2),
        (lambda: dihedral(2), 4),
        (lambda: dihedral(4), 8),
        (lambda: symmetric(3), 6),
        (lambda: symmetric(4), 24),
        (lambda: alternating(4), 12),
        (klein_four, 4),
        (quaternion, 8),
    ])
    def test_orders(self, build, order):
        """Each catalog group should have its known order."""
        assert build().order == order

    def test_identity_first(self):
        """Canonical order puts the identity at index 0."""
        G = symmetric(4)
        assert G.elements[0].is_identity()
        assert G.mul_table[0].tolist() == list(range(G.order))
        assert G.inverse_table[0] == 0

    def test_elements_sorted_by_images(self):
        """Elements should be listed in lexicographic image order."""
        G = alternating(4)
        images = [p.images for p in G.elements]
        assert images == sorted(images)

    def test_mul_table_matches_composition(self):
        """mul_table should agree with composing the permutations."""
        G = dihedral(4)
        for a in range(G.order):
            for b in range(G.order):
                assert G.elements[G.mul_table[a, b]] == G.elements[a] * G.elements[b]

    def test_words_evaluate_to_elements(self):
        """elements[g] = gen[s0] * gen[s1] * ... for words[g] = (s0, s1, ...)."""
        G = symmetric(4)
        for g, word in enumerate(G.words):
            p = Permutation.identity(G.degree)
            for s in word:
                p = p * G.generators[s]
            assert p == G.elements[g]

    def test_enumerate_elements(self):
        """(1 2 3 4) and (1 3) close to the dihedral group of order 8."""
        gens = [Permutation.from_cycles("(1 2 3 4)", 4), Permutation.from_cycles("(1 3)", 4)]
        G = enumerate_elements(gens, 4)
        assert G.order == 8
        assert G.label == "G8"
        assert enumerate_elements([], 3).order == 1

    def test_enumerate_rejects_wrong_degree(self):
        """Generators of another degree should fail."""
        with pytest.raises(InvalidPermutation):
            enumerate_elements([Permutation.from_cycles("(1 2)", 2)], 3)

    def test_order_cap(self):
        """Closures past max_order should fail."""
        with pytest.raises(OrderCapExceeded):
            symmetric(4, max_order=10)
        with pytest.raises(OrderCapExceeded):
            enumerate_elements([Permutation.from_cycles("(1 2 3 4 5)", 5)], 5, max_order=4)

    def test_invalid_family_size(self):
        """A family size of 0 should fail."""
        with pytest.raises(SpecParseError):
            cyclic(0)

    def test_same_elements(self):
        """Structural equality across separately built groups."""
        assert symmetric(3).same_elements(symmetric(3))
        assert not symmetric(3).same_elements(cyclic(3))


# =============================================================================
# Subgroups
# =============================================================================

class TestSubgroup:
    """Tests for Subgroup."""

    def test_checked_rejects_non_closed_set(self):
        """A set not closed under products should fail."""
        G = symmetric(3)
        r = G.index_of(Permutation.from_cycles("(1 2 3)", 3))
        with pytest.raises(NotASubgroup):
            Subgroup.checked(G, 1 | (1 << r))

    def test_checked_accepts_subgroup(self):
        """A closed set should be accepted with its order and index."""
        G = symmetric(3)
        H = _transposition_subgroup(G)
        assert Subgroup.checked(G, H.member_mask) == H
        assert H.order == 2
        assert H.index == 3

    def test_as_group_is_cached(self):
        """as_group should return the same object each call."""
        G = symmetric(4)
        H = _transposition_subgroup(G)
        assert H.as_group() is H.as_group()
        assert H.as_group().order == 2
        assert G.whole().as_group() is G

    def test_parent_round_trip(self):
        """from_parent then to_parent should give back the subgroup."""
        G = symmetric(4)
        lattice = subgroup_lattice(G)
        dihedral_class = next(i for i, r in enumerate(lattice.class_reps) if r.order == 8)
        K = lattice.class_reps[dihedral_class]
        H = lattice.conjugate_inside(1, dihedral_class)
        assert H is not None
        assert K.to_parent(K.from_parent(H)) == H

    def test_from_parent_requires_containment(self):
        """A subgroup outside K should fail."""
        G = symmetric(3)
        H = _transposition_subgroup(G)
        C3 = G.generate([Permutation.from_cycles("(1 2 3)", 3)])
        with pytest.raises(NotASubgroup):
            C3.from_parent(H)


# =============================================================================
# Cosets and conjugation
# =============================================================================

class TestCosets:
    """Tests for cosets, double cosets and conjugation."""

    def test_left_cosets_partition(self):
        """Left cosets should partition G with H first."""
        G = symmetric(3)
        H = _transposition_subgroup(G)
        blocks = left_cosets(G, H)
        assert len(blocks) == 3
        assert all(len(b) == 2 for b in blocks)
        assert sorted(x for b in blocks for x in b) == list(range(6))
        assert blocks[0] == H.members

    def test_right_cosets_differ_from_left(self):
        """For a non-normal subgroup left and right cosets differ."""
        G = symmetric(3)
        H = _transposition_subgroup(G)
        assert set(left_cosets(G, H)) != set(right_cosets(G, H))

    def test_double_cosets(self):
        """|C2 \\ S3 / C2| = 2 with sizes 2 and 4."""
        G = symmetric(3)
        H = _transposition_subgroup(G)
        blocks = double_cosets(G, H, H)
        assert sorted(len(b) for b in blocks) == [2, 4]

    def test_foreign_subgroup_rejected(self):
        """A subgroup of another group instance should fail."""
        H = _transposition_subgroup(symmetric(3))
        with pytest.raises(NotASubgroup):
            left_cosets(symmetric(3), H)

    def test_conjugates_of_transposition(self):
        """(1 2) should have three conjugate subgroups in S3."""
        G = symmetric(3)
        H = _transposition_subgroup(G)
        conjugates = {conjugate_subgroup(H, g).member_mask for g in range(G.order)}
        assert len(conjugates) == 3


# =============================================================================
# Lattice
# =============================================================================

class TestLattice:
    """Tests for subgroup_lattice."""

    @pytest.mark.parametrize("build, subgroups, classes", [
        (trivial_group, 1, 1),
        (lambda: cyclic(2), 2, 2),
        (lambda: cyclic(4), 3, 3),
        (klein_four, 5, 5),
        (lambda: symmetric(3), 6, 4),
        (lambda: dihedral(4), 10, 8),
        (quaternion, 6, 6),
        (lambda: alternating(4), 10, 5),
        (lambda: symmetric(4), 30, 11),
    ])
    def test_counts(self, build, subgroups, classes):
        """Subgroup and class counts should match known values."""
        lattice = subgroup_lattice(build())
        assert len(lattice.all_subgroups) == subgroups
        assert lattice.class_count == classes

    @pytest.mark.parametrize("build", [
        lambda: cyclic(4),
        klein_four,
        lambda: symmetric(3),
        lambda: dihedral(4),
        quaternion,
        lambda: alternating(4),
    ])
    def test_matches_exhaustive_search(self, build):
        """The lattice should find every subgroup exhaustive search finds."""
        G = build()
        lattice = subgroup_lattice(G)
        assert {s.member_mask for s in lattice.all_subgroups} == set(brute_force_subgroups(G))

    def test_exhaustive_search_cap(self):
        """Exhaustive search over S4 should exceed its cap."""
        with pytest.raises(OrderCapExceeded):
            brute_force_subgroups(symmetric(4))

    def test_s3_structure(self):
        """S3 classes should carry labels, indices and Weyl indices."""
        lattice = subgroup_lattice(symmetric(3))
        assert lattice.labels == ("1a", "2a", "3a", "6a")
        assert lattice.index_of == (6, 3, 2, 1)
        assert lattice.weyl_index == (6, 1, 2, 1)
        assert lattice.subgroup_label(0) == "e"
        assert lattice.subgroup_label(3) == "S3"

    def test_canonical_order(self):
        """Classes sorted by order; trivial first, whole group last."""
        lattice = subgroup_lattice(symmetric(4))
        orders = [r.order for r in lattice.class_reps]
        assert orders == sorted(orders)
        assert lattice.class_reps[0].is_trivial()
        assert lattice.class_reps[-1].is_whole()

    def test_subconjugacy(self):
        """Subconjugacy should hold from e and into G."""
        lattice = subgroup_lattice(symmetric(3))
        # C2 is not subconjugate to C3
        assert not lattice.subconjugacy[1, 2]
        assert lattice.subconjugacy[0].all()
        assert lattice.subconjugacy[:, 3].all()

    def test_class_of(self):
        """class_of should find each member of each class."""
        G = symmetric(3)
        lattice = subgroup_lattice(G)
        for i, members in enumerate(lattice.classes):
            for sub in members:
                assert lattice.class_of(sub) == i
                assert lattice.class_of(sub.member_mask) == i

    def test_class_of_non_subgroup(self):
        """A mask that is not a subgroup should fail."""
        lattice = subgroup_lattice(symmetric(3))
        with pytest.raises(NotASubgroup):
            lattice.class_of(0b110)

    def test_lattice_cap(self):
        """Groups past max_order should fail."""
        with pytest.raises(OrderCapExceeded):
            subgroup_lattice(symmetric(4), max_order=20)

    def test_cache_is_bounded(self):
        """Lattices should be cached per group up to LATTICE_CACHE_SIZE entries."""
        G = symmetric(3)
        assert subgroup_lattice(G) is subgroup_lattice(G)
        assert _build_lattice.cache_info().maxsize == LATTICE_CACHE_SIZE
        for n in range(1, LATTICE_CACHE_SIZE + 3):
            subgroup_lattice(cyclic(n))
        assert _build_lattice.cache_info().currsize == LATTICE_CACHE_SIZE
