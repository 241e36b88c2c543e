"""Property-based tests for Burnside ring arithmetic.

All elements are generated over fixed small tables -- no file I/O.
"""

from hypothesis import given, settings
from hypothesis import strategies as st

from tamlab.domain.burnside import (
    BurnsideElement,
    from_marks,
    ghost,
    is_unit,
    is_unit_in_localization,
    mul,
    norm_int,
    one,
    table_of_marks,
)
from tamlab.domain.catalog import cyclic, symmetric

S3 = table_of_marks(symmetric(3))
C4 = table_of_marks(cyclic(4))

coeffs_s3 = st.lists(st.integers(-5, 5), min_size=4, max_size=4).map(tuple)
coeffs_c4 = st.lists(st.integers(-5, 5), min_size=3, max_size=3).map(tuple)

PROPERTY_SETTINGS = settings(max_examples=100, deadline=None)


def _s3(coeffs) -> BurnsideElement:
    """An S3 element from coefficients."""
    return BurnsideElement(S3, coeffs)


# =============================================================================
# Ghost map
# =============================================================================

class TestGhostMap:
    """Property tests for the ghost map."""

    @PROPERTY_SETTINGS
    @given(coeffs_s3)
    def test_from_marks_inverts_ghost(self, c):
        """from_marks should undo ghost."""
        x = _s3(c)
        assert from_marks(ghost(x)) == x

    @PROPERTY_SETTINGS
    @given(coeffs_s3, coeffs_s3)
    def test_additive(self, a, b):
        """ghost should be additive."""
        x, y = _s3(a), _s3(b)
        assert ghost(x + y).values == tuple(u + v for u, v in zip(ghost(x).values, ghost(y).values))

    @PROPERTY_SETTINGS
    @given(coeffs_s3, coeffs_s3)
    def test_multiplicative(self, a, b):
        """ghost should turn products into pointwise products."""
        x, y = _s3(a), _s3(b)
        assert ghost(mul(x, y)).values == tuple(u * v for u, v in zip(ghost(x).values, ghost(y).values))


# =============================================================================
# Ring laws
# =============================================================================

class TestRingLaws:
    """Property tests for the ring axioms."""

    @PROPERTY_SETTINGS
    @given(coeffs_s3, coeffs_s3)
    def test_commutative(self, a, b):
        """mul should be commutative."""
        assert mul(_s3(a), _s3(b)) == mul(_s3(b), _s3(a))

    @PROPERTY_SETTINGS
    @given(coeffs_c4, coeffs_c4, coeffs_c4)
    def test_distributive(self, a, b, c):
        """Multiplication should distribute over addition."""
        x, y, z = (BurnsideElement(C4, v) for v in (a, b, c))
        assert x * (y + z) == x * y + x * z

    @PROPERTY_SETTINGS
    @given(coeffs_s3)
    def test_unit_element(self, c):
        """one should be the multiplicative identity."""
        x = _s3(c)
        assert mul(x, one(S3)) == x

    @PROPERTY_SETTINGS
    @given(st.integers(-6, 6), st.integers(-6, 6))
    def test_integer_norm_multiplicative(self, a, b):
        """nm(ab) should equal nm(a)·nm(b), signs included."""
        product = norm_int(S3, a, method="marks") * norm_int(S3, b, method="marks")
        assert product == norm_int(S3, a * b, method="marks")


# =============================================================================
# Units and localizations
# =============================================================================

class TestLocalization:
    """Property tests for is_unit_in_localization."""

    @PROPERTY_SETTINGS
    @given(coeffs_s3)
    def test_inverting_one_changes_nothing(self, c):
        """Inverting 1 should give back is_unit."""
        x = _s3(c)
        assert bool(is_unit_in_localization(x, one(S3))) == is_unit(x)

    @PROPERTY_SETTINGS
    @given(coeffs_s3)
    def test_element_is_unit_after_inverting_itself(self, c):
        """x should be a unit after inverting x."""
        x = _s3(c)
        assert is_unit_in_localization(x, x).unit

    @PROPERTY_SETTINGS
    @given(coeffs_s3, coeffs_s3)
    def test_factor_of_inverted_element_is_unit(self, a, b):
        """x should be a unit after inverting x·y."""
        x, y = _s3(a), _s3(b)
        assert is_unit_in_localization(x, mul(x, y)).unit

    @PROPERTY_SETTINGS
    @given(coeffs_s3)
    def test_witness_contains_x_not_u(self, c):
        """A witness prime should contain x and not u."""
        x = _s3(c)
        u = one(S3) + one(S3)
        verdict = is_unit_in_localization(x, u)
        if verdict.witness is not None:
            i, q = verdict.witness.class_index, verdict.witness.q
            mark_x, mark_u = ghost(x).values[i], ghost(u).values[i]
            assert (mark_x == 0) if q == 0 else (mark_x % q == 0)
            assert (mark_u != 0) if q == 0 else (mark_u % q != 0)
