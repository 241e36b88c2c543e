"""Named permutation groups used by the CLI group grammar and the tests.

D<n> is the dihedral group of order 2n (symmetries of the n-gon).
"""

from tamlab.domain.errors import SpecParseError
from tamlab.domain.perm_core import (
    DEFAULT_MAX_ORDER,
    PermGroup,
    Permutation,
    enumerate_elements,
)


def _cycle(points: list[int], degree: int) -> Permutation:
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Permutation(tuple(images))


def trivial_group(max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    return enumerate_elements([], 1, max_order=max_order, name="C1")


def cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """C<n> acting regularly on n points."""
    if n < 1:
        raise SpecParseError("cyclic group needs n >= 1", f"C{n}")
    if n == 1:
        return trivial_group(max_order)
    return enumerate_elements([_cycle(list(range(n)), n)], n, max_order=max_order, name=f"C{n}")


def dihedral(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """D<n> of order 2n."""
    if n < 1:
        raise SpecParseError("dihedral group needs n >= 1", f"D{n}")
    if n == 1:
        gens = [_cycle([0, 1], 2)]
        degree = 2
    elif n == 2:
        gens = [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))]
        degree = 4
    else:
        rotation = _cycle(list(range(n)), n)
        reflection = Permutation(tuple((-i) % n for i in range(n)))
        gens = [rotation, reflection]
        degree = n
    return enumerate_elements(gens, degree, max_order=max_order, name=f"D{n}")


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """S<n> on n points, generated by a transposition and an n-cycle."""
    if n < 1:
        raise SpecParseError("symmetric group needs n >= 1", f"S{n}")
    if n == 1:
        return enumerate_elements([], 1, max_order=max_order, name="S1")
    gens = [_cycle([0, 1], n), _cycle(list(range(n)), n)]
    return enumerate_elements(gens, n, max_order=max_order, name=f"S{n}")


def alternating(n: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """A<n> on n points, generated by the 3-cycles (1 2 k)."""
    if n < 1:
        raise SpecParseError("alternating group needs n >= 1", f"A{n}")
    degree = max(n, 1)
    gens = [_cycle([0, 1, k], degree) for k in range(2, n)]
    return enumerate_elements(gens, degree, max_order=max_order, name=f"A{n}")


def klein_four(max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    gens = [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))]
    return enumerate_elements(gens, 4, max_order=max_order, name="V4")


# Quaternion units as (sign, unit) with unit in "1ijk"
_UNITS = "1ijk"
_UNIT_PRODUCTS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion(max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """Q8 in its left regular representation on 8 points."""
    units = [(s, u) for u in _UNITS for s in (1, -1)]
    position = {q: i for i, q in enumerate(units)}

    def left_mult(a: tuple[int, str]) -> Permutation:
        images = []
        for b in units:
            sign, unit = _UNIT_PRODUCTS[(a[1], b[1])]
            images.append(position[(a[0] * b[0] * sign, unit)])
        return Permutation(tuple(images))

    gens = [left_mult((1, "i")), left_mult((1, "j"))]
    return enumerate_elements(gens, 8, max_order=max_order, name="Q8")
