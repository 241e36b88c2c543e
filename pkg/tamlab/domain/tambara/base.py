"""Tambara functor interface: levelwise rings with res, tr, nm and conj.

Levels are indexed by subgroups of the ambient group. The public apply_*
methods validate the level relationship and carrier membership, then
delegate to the instance's private structure maps.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Generic, TypeVar

import numpy as np

from tamlab.domain.errors import ElementNotInCarrier, LevelMismatch
from tamlab.domain.perm_core import (
    PermGroup,
    Permutation,
    Subgroup,
    SubgroupLattice,
    bits_to_mask,
    conjugate_subgroup,
    subgroup_lattice,
)

E = TypeVar("E")


class LevelRing(ABC, Generic[E]):
    """A commutative ring T(G/H) with enumerable or sampleable elements."""

    @abstractmethod
    def zero(self) -> E:
        pass

    @abstractmethod
    def one(self) -> E:
        pass

    @abstractmethod
    def add(self, a: E, b: E) -> E:
        pass

    @abstractmethod
    def mul(self, a: E, b: E) -> E:
        pass

    @abstractmethod
    def neg(self, a: E) -> E:
        pass

    @abstractmethod
    def from_int(self, k: int) -> E:
        """k·1."""
        pass

    @abstractmethod
    def contains(self, a: object) -> bool:
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, count: int) -> list[E]:
        """Test elements; deterministic for a given generator state."""
        pass

    @abstractmethod
    def inverse(self, a: E) -> E | None:
        """Multiplicative inverse, or None when a is not a unit."""
        pass

    def is_unit(self, a: E) -> bool:
        return self.inverse(a) is not None

    def equal(self, a: E, b: E) -> bool:
        return a == b

    def format(self, a: E) -> str:
        return str(a)


def lift(H: Subgroup, inner: Subgroup) -> Subgroup:
    """A subgroup of H.as_group() (or of a group with the same elements) as a subgroup of H.parent."""
    members = H.members
    return Subgroup(H.parent, bits_to_mask(members[i] for i in inner.members))


class TambaraInstance(ABC):
    """Levels T(G/H) for every H <= G with the four families of structure maps.

    Attributes:
        name: Instance spec, e.g. "burnside" or "fixed:n=5".
        group: Ambient group G.
        lattice: Subgroup lattice of G.
    """

    def __init__(self, name: str, group: PermGroup, lattice: SubgroupLattice | None = None):
        self.name = name
        self.group = group
        self.lattice = lattice if lattice is not None else subgroup_lattice(group)
        self._levels: dict[int, LevelRing] = {}

    # --- Levels ---

    def level(self, H: Subgroup) -> LevelRing:
        self._require_own(H)
        ring = self._levels.get(H.member_mask)
        if ring is None:
            ring = self._build_level(H)
            self._levels[H.member_mask] = ring
        return ring

    def level_of_class(self, i: int) -> LevelRing:
        return self.level(self.lattice.class_reps[i])

    @abstractmethod
    def _build_level(self, H: Subgroup) -> LevelRing:
        pass

    # --- Structure maps (implemented by instances) ---

    @abstractmethod
    def _res(self, K: Subgroup, H: Subgroup, x):
        pass

    @abstractmethod
    def _tr(self, H: Subgroup, K: Subgroup, x):
        pass

    @abstractmethod
    def _nm(self, H: Subgroup, K: Subgroup, x):
        pass

    @abstractmethod
    def _conj(self, g: int, H: Subgroup, x):
        pass

    # --- Validated entry points ---

    def apply_res(self, K: Subgroup, H: Subgroup, x):
        """res_H^K: T(G/K) -> T(G/H) for H <= K."""
        self._require_inclusion(H, K)
        self._require_element(K, x)
        return x if H.member_mask == K.member_mask else self._res(K, H, x)

    def apply_tr(self, H: Subgroup, K: Subgroup, x):
        """tr_H^K: T(G/H) -> T(G/K) for H <= K (additive)."""
        self._require_inclusion(H, K)
        self._require_element(H, x)
        return x if H.member_mask == K.member_mask else self._tr(H, K, x)

    def apply_nm(self, H: Subgroup, K: Subgroup, x):
        """nm_H^K: T(G/H) -> T(G/K) for H <= K (multiplicative)."""
        self._require_inclusion(H, K)
        self._require_element(H, x)
        return x if H.member_mask == K.member_mask else self._nm(H, K, x)

    def apply_conj(self, g: Permutation | int, H: Subgroup, x):
        """c_g: T(G/H) -> T(G/gHg^-1)."""
        self._require_own(H)
        self._require_element(H, x)
        gi = g if isinstance(g, int) else self.group.index_of(g)
        return x if gi == 0 else self._conj(gi, H, x)

    def conjugate(self, g: Permutation | int, H: Subgroup) -> Subgroup:
        return conjugate_subgroup(H, g)

    # --- Validation ---

    def _require_own(self, H: Subgroup) -> None:
        if H.parent is not self.group:
            raise LevelMismatch(f"subgroup does not belong to {self.group.label}")

    def _require_inclusion(self, H: Subgroup, K: Subgroup) -> None:
        self._require_own(H)
        self._require_own(K)
        if not H.is_subgroup_of(K):
            raise LevelMismatch(
                f"order {H.order} subgroup is not contained in order {K.order} subgroup",
                self.name,
            )

    def _require_element(self, H: Subgroup, x) -> None:
        if not self.level(H).contains(x):
            raise ElementNotInCarrier(f"element is not in the level of order {H.order}", self.name)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, {self.group.label})"
