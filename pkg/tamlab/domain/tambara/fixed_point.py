"""Fixed-point Tambara functor of R = (Z/n)^d with G permuting coordinates.

T(G/H) = R^H, res is inclusion, tr sums over coset representatives and
nm multiplies over them. Elements are tuples of residues in 0..n-1.
"""

from __future__ import annotations

import numpy as np

from tamlab.domain.errors import InvariantViolation
from tamlab.domain.perm_core import PermGroup, Subgroup, SubgroupLattice, left_cosets
from tamlab.domain.tambara.base import LevelRing, TambaraInstance

Vector = tuple[int, ...]


class FixedPointLevel(LevelRing[Vector]):
    """R^H: vectors constant on the H-orbits of coordinates."""

    def __init__(self, modulus: int, block_of: np.ndarray):
        self.modulus = modulus
        self.block_of = block_of
        self.dimension = int(block_of.size)
        _, self._block_index = np.unique(block_of, return_inverse=True)
        self._block_index = self._block_index.reshape(-1)
        self.block_count = int(self._block_index.max()) + 1 if self.dimension else 0
        self._first = np.array(
            [int(np.flatnonzero(self._block_index == b)[0]) for b in range(self.block_count)],
            dtype=np.int64,
        )

    def _vec(self, values) -> Vector:
        return tuple(int(v) % self.modulus for v in values)

    def zero(self) -> Vector:
        return (0,) * self.dimension

    def one(self) -> Vector:
        return self.from_int(1)

    def from_int(self, k: int) -> Vector:
        return (k % self.modulus,) * self.dimension

    def add(self, a: Vector, b: Vector) -> Vector:
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def mul(self, a: Vector, b: Vector) -> Vector:
        return tuple((x * y) % self.modulus for x, y in zip(a, b))

    def neg(self, a: Vector) -> Vector:
        return tuple((-x) % self.modulus for x in a)

    def contains(self, a: object) -> bool:
        if not isinstance(a, tuple) or len(a) != self.dimension:
            return False
        if not all(isinstance(v, int) and 0 <= v < self.modulus for v in a):
            return False
        values = np.array(a, dtype=np.int64)
        return bool(np.array_equal(values, values[self.block_of]))

    def sample(self, rng: np.random.Generator, count: int) -> list[Vector]:
        draws = rng.integers(self.modulus, size=(count, self.block_count))
        expanded = draws[:, self._block_index]
        return [self._vec(row) for row in expanded]

    def inverse(self, a: Vector) -> Vector | None:
        """Exhaustive search in Z/n for each orbit coordinate."""
        values = np.array(a, dtype=np.int64)[self._first]
        candidates = np.arange(self.modulus, dtype=np.int64)
        hits = (values[:, None] * candidates[None, :]) % self.modulus == 1 % self.modulus
        if not hits.any(axis=1).all():
            return None
        inverse_blocks = hits.argmax(axis=1)
        return self._vec(inverse_blocks[self._block_index])

    def format(self, a: Vector) -> str:
        return "(" + ", ".join(str(v) for v in a) + ")"


class FixedPointInstance(TambaraInstance):
    """Fixed points of (Z/n)^d under a coordinate permutation action.

    coordinate_action[g, a] = b means (g.x)_a = x_b; the regular action uses
    b = index of a*g, so (g.x)_a = x_{a g}.
    """

    def __init__(
        self,
        group: PermGroup,
        modulus: int,
        coordinate_action: np.ndarray,
        name: str,
        lattice: SubgroupLattice | None = None,
    ):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        super().__init__(name, group, lattice)
        self.modulus = modulus
        self.action = np.asarray(coordinate_action, dtype=np.int64)
        self.action.setflags(write=False)
        self._reps: dict[tuple[int, int], list[int]] = {}
        self._check_action()

    @classmethod
    def regular(cls, group: PermGroup, modulus: int, lattice: SubgroupLattice | None = None) -> FixedPointInstance:
        return cls(group, modulus, group.mul_table.T, f"fixed:n={modulus}", lattice)

    @classmethod
    def diagonal(cls, group: PermGroup, modulus: int, lattice: SubgroupLattice | None = None) -> FixedPointInstance:
        """Z/n with trivial action at every level."""
        action = np.zeros((group.order, 1), dtype=np.int64)
        return cls(group, modulus, action, f"fixed:n={modulus},diag", lattice)

    def _check_action(self) -> None:
        mul = self.group.mul_table
        n = self.group.order
        if self.action.shape[0] != n:
            raise InvariantViolation("coordinate action needs one row per element", self.name)
        for g in range(n):
            for h in range(n):
                if not np.array_equal(self.action[mul[g, h]], self.action[h][self.action[g]]):
                    raise InvariantViolation("coordinate action is not a left action", self.name)

    @property
    def dimension(self) -> int:
        return int(self.action.shape[1])

    def _build_level(self, H: Subgroup) -> FixedPointLevel:
        block_of = self.action[list(H.members)].min(axis=0)
        return FixedPointLevel(self.modulus, block_of)

    def act(self, g: int, x: Vector) -> Vector:
        return tuple(x[b] for b in self.action[g])

    def _coset_reps(self, H: Subgroup, K: Subgroup) -> list[int]:
        key = (H.member_mask, K.member_mask)
        reps = self._reps.get(key)
        if reps is None:
            reps = [block[0] for block in left_cosets(self.group, H) if K.contains(block[0])]
            self._reps[key] = reps
        return reps

    def _res(self, K: Subgroup, H: Subgroup, x: Vector) -> Vector:
        return x

    def _tr(self, H: Subgroup, K: Subgroup, x: Vector) -> Vector:
        ring = self.level(K)
        total = ring.zero()
        for g in self._coset_reps(H, K):
            total = ring.add(total, self.act(g, x))
        return total

    def _nm(self, H: Subgroup, K: Subgroup, x: Vector) -> Vector:
        ring = self.level(K)
        result = ring.one()
        for g in self._coset_reps(H, K):
            result = ring.mul(result, self.act(g, x))
        return result

    def _conj(self, g: int, H: Subgroup, x: Vector) -> Vector:
        return self.act(g, x)
