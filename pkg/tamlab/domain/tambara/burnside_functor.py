"""The Burnside Tambara functor: T(G/H) = A(H).

res, tr and conj are computed on basis G-sets (restriction, induction and
transport of coset sets) and extended linearly. nm is coinduction on actual
H-sets within the enumeration cap, cross-checked against the double coset
marks formula; beyond the cap and on virtual elements the marks formula is
used alone.
"""

from __future__ import annotations

import numpy as np

from tamlab.domain import burnside
from tamlab.domain.burnside import BurnsideElement, TableOfMarks
from tamlab.domain.errors import EnumerationCapExceeded, InvariantViolation
from tamlab.domain.gset import (
    DEFAULT_MAX_POINTS,
    GSet,
    coinduce,
    coset_gset,
    induce,
    restrict,
    transport,
)
from tamlab.domain.perm_core import PermGroup, Subgroup, SubgroupLattice
from tamlab.domain.tambara.base import LevelRing, TambaraInstance


class BurnsideLevel(LevelRing[BurnsideElement]):
    """A(H) as a level ring."""

    SAMPLE_BOUND = 2

    def __init__(self, table: TableOfMarks):
        self.table = table

    def zero(self) -> BurnsideElement:
        return burnside.zero(self.table)

    def one(self) -> BurnsideElement:
        return burnside.one(self.table)

    def add(self, a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
        return a + b

    def mul(self, a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
        return burnside.mul(a, b)

    def neg(self, a: BurnsideElement) -> BurnsideElement:
        return -a

    def from_int(self, k: int) -> BurnsideElement:
        return burnside.int_embed(self.table, k)

    def contains(self, a: object) -> bool:
        return isinstance(a, BurnsideElement) and a.table is self.table

    def sample(self, rng: np.random.Generator, count: int) -> list[BurnsideElement]:
        """Every basis element first, then random small combinations."""
        out = [burnside.basis(self.table, j) for j in range(self.table.size)]
        extra = max(count - len(out), 0)
        if extra:
            draws = rng.integers(-self.SAMPLE_BOUND, self.SAMPLE_BOUND + 1, size=(extra, self.table.size))
            out.extend(BurnsideElement(self.table, tuple(int(v) for v in row)) for row in draws)
        return out[:max(count, self.table.size)]

    def inverse(self, a: BurnsideElement) -> BurnsideElement | None:
        # units of A(H) square to 1
        return a if burnside.is_unit(a) else None

    def format(self, a: BurnsideElement) -> str:
        return burnside.format_element(a)


class BurnsideInstance(TambaraInstance):
    """A(-) with res = restriction, tr = induction, nm = coinduction, conj = transport."""

    def __init__(
        self,
        group: PermGroup,
        lattice: SubgroupLattice | None = None,
        max_points: int = DEFAULT_MAX_POINTS,
    ):
        super().__init__("burnside", group, lattice)
        self.max_points = max_points
        self._basis_images: dict[tuple, tuple[BurnsideElement, ...]] = {}

    def _build_level(self, H: Subgroup) -> BurnsideLevel:
        return BurnsideLevel(burnside.table_of_marks(H.as_group()))

    def table(self, H: Subgroup) -> TableOfMarks:
        return self.level(H).table

    def _basis_gsets(self, H: Subgroup) -> list[GSet]:
        table = self.table(H)
        group = table.group
        return [coset_gset(group, rep) for rep in table.lattice.class_reps]

    def _linear(self, key: tuple, images, x: BurnsideElement, target: TableOfMarks) -> BurnsideElement:
        cached = self._basis_images.get(key)
        if cached is None:
            cached = tuple(images())
            self._basis_images[key] = cached
        result = burnside.zero(target)
        for a, image in zip(x.coeffs, cached):
            if a:
                result = result + image * a
        return result

    def _res(self, K: Subgroup, H: Subgroup, x: BurnsideElement) -> BurnsideElement:
        target = self.table(H)
        inner = K.from_parent(H)

        def images():
            return [burnside.decompose(restrict(X, inner), target) for X in self._basis_gsets(K)]

        return self._linear(("res", K.member_mask, H.member_mask), images, x, target)

    def _tr(self, H: Subgroup, K: Subgroup, x: BurnsideElement) -> BurnsideElement:
        target = self.table(K)

        def images():
            return [
                burnside.decompose(induce(X, target.group, self.max_points), target)
                for X in self._basis_gsets(H)
            ]

        return self._linear(("tr", H.member_mask, K.member_mask), images, x, target)

    def _conj(self, g: int, H: Subgroup, x: BurnsideElement) -> BurnsideElement:
        target = self.table(self.conjugate(g, H))

        def images():
            return [burnside.decompose(transport(X, H, g), target) for X in self._basis_gsets(H)]

        return self._linear(("conj", g, H.member_mask), images, x, target)

    def _nm(self, H: Subgroup, K: Subgroup, x: BurnsideElement) -> BurnsideElement:
        target = self.table(K)
        by_marks = burnside.norm_marks_between(x, K.from_parent(H), target)
        if not x.is_nonnegative():
            return by_marks
        size = sum(a * self.table(H).lattice.index_of[j] for j, a in enumerate(x.coeffs))
        if size ** (K.order // H.order) > self.max_points:
            return by_marks
        try:
            by_sets = burnside.decompose(
                coinduce(burnside.realize(x), target.group, self.max_points), target,
            )
        except EnumerationCapExceeded:
            return by_marks
        if by_sets != by_marks:
            raise InvariantViolation(
                "coinduction disagrees with the double coset marks formula",
                f"{self.group.label}: order {H.order} -> {K.order}",
            )
        return by_sets
