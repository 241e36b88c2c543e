"""Finite G-sets with explicit actions.

A GSet stores the action of each generator of its group as an integer row
(point -> point). The action of an arbitrary element is obtained from the
generator word recorded on the group, and the full table act[g][x] is
materialised only for small sets. This keeps function G-sets with tens of
millions of points enumerable.

All actions are left actions: act(g * h) = act(g) o act(h).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from tamlab.domain.errors import (
    EnumerationCapExceeded,
    GroupMismatch,
    InvariantViolation,
    NotASubgroup,
)
from tamlab.domain.perm_core import (
    PermGroup,
    Permutation,
    Subgroup,
    SubgroupLattice,
    conjugate_subgroup,
    left_cosets,
    right_cosets,
    subgroup_lattice,
)


DEFAULT_MAX_POINTS = 20_000_000
FULL_TABLE_LIMIT = 1 << 22          # order * size entries kept in memory
EXHAUSTIVE_CHECK_LIMIT = 10**6      # order * size below which every pair is checked
SAMPLED_PAIRS = 64
SAMPLED_POINTS = 1024
_CHUNK = 1 << 20


def _dtype(size: int) -> type:
    return np.int32 if size < 2**31 else np.int64


# =============================================================================
# GSet
# =============================================================================

@dataclass(frozen=True, eq=False)
class GSet:
    """A finite left G-set.

    Attributes:
        group: Acting group.
        size: Number of points (points are 0..size-1).
        generator_action: Array (len(group.generators), size); row s is the
            action of group.generators[s].
        labels: Optional per-point debug labels.
    """

    group: PermGroup
    size: int
    generator_action: np.ndarray = field(repr=False)
    labels: tuple[str, ...] | None = field(default=None, repr=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        expected = (len(self.group.generators), self.size)
        if self.generator_action.shape != expected:
            raise InvariantViolation(
                "generator action has the wrong shape",
                f"{self.generator_action.shape} != {expected}",
            )
        self.generator_action.setflags(write=False)
        _check_action(self)

    def image(self, g: int, points: np.ndarray) -> np.ndarray:
        """Images of `points` under element index g."""
        table = self._full_table()
        if table is not None:
            return table[g][points]
        out = points
        for s in reversed(self.group.words[g]):
            out = self.generator_action[s][out]
        return out

    def act(self, g: int) -> np.ndarray:
        """The action row of element index g (act[g][x])."""
        table = self._full_table()
        if table is not None:
            return table[g]
        return self.image(g, np.arange(self.size, dtype=_dtype(self.size)))

    def action_table(self) -> np.ndarray:
        """Full table act[element_index][point]."""
        table = self._full_table()
        if table is None:
            raise EnumerationCapExceeded(
                f"action table of {self.group.order} x {self.size} entries not materialised",
            )
        return table

    def _full_table(self) -> np.ndarray | None:
        if "table" in self._cache:
            return self._cache["table"]
        n = self.group.order
        table = None
        if n * self.size <= FULL_TABLE_LIMIT:
            table = np.empty((n, self.size), dtype=_dtype(self.size))
            table[0] = np.arange(self.size)
            done = np.zeros(n, dtype=bool)
            done[0] = True
            mul = self.group.mul_table
            frontier = [0]
            while frontier:
                nxt = []
                for x in frontier:
                    for s, gi in enumerate(self.group.generator_indices):
                        y = int(mul[gi, x])
                        if not done[y]:
                            table[y] = self.generator_action[s][table[x]]
                            done[y] = True
                            nxt.append(y)
                frontier = nxt
            table.setflags(write=False)
        self._cache["table"] = table
        return table

    def __repr__(self) -> str:
        return f"GSet(group={self.group.label}, size={self.size})"


def _check_action(X: GSet) -> None:
    """Verify act(g*h) = act(g) o act(h); exhaustive on small sets, sampled above."""
    if X.size == 0:
        return
    G = X.group
    n = G.order
    for row in X.generator_action:
        if row.min() < 0 or row.max() >= X.size or np.bincount(row, minlength=X.size).max() != 1:
            raise InvariantViolation("generator does not act by a bijection", G.label)

    mul = G.mul_table
    if n * X.size <= EXHAUSTIVE_CHECK_LIMIT:
        table = X._full_table()
        for g in range(n):
            if not np.array_equal(table[mul[g]], table[g][table]):
                raise InvariantViolation("action is not a homomorphism", f"g={g}")
        return

    rng = np.random.default_rng(0)
    points = rng.choice(X.size, size=min(X.size, SAMPLED_POINTS), replace=False)
    for g, h in rng.integers(n, size=(SAMPLED_PAIRS, 2)):
        lhs = X.image(int(mul[g, h]), points)
        rhs = X.image(int(g), X.image(int(h), points))
        if not np.array_equal(lhs, rhs):
            raise InvariantViolation("action is not a homomorphism", f"g={g}, h={h}")


def _rows_for(X: GSet, group: PermGroup) -> np.ndarray:
    """X's action rows on the generators of `group` (same elements as X.group)."""
    if not group.generators:
        return np.empty((0, X.size), dtype=_dtype(X.size))
    return np.stack([X.act(g) for g in group.generator_indices])


def _require_same_group(X: GSet, Y: GSet) -> None:
    if not X.group.same_elements(Y.group):
        raise GroupMismatch(f"{X.group.label} vs {Y.group.label}")


def _require_acting(X: GSet, H: Subgroup) -> None:
    if not H.parent.same_elements(X.group):
        raise NotASubgroup(f"subgroup does not belong to {X.group.label}")


# =============================================================================
# Basic constructions
# =============================================================================

def empty_gset(G: PermGroup) -> GSet:
    return GSet(G, 0, np.empty((len(G.generators), 0), dtype=np.int32))


def point_gset(G: PermGroup, count: int = 1) -> GSet:
    """`count` fixed points."""
    row = np.arange(count, dtype=np.int32)
    return GSet(G, count, np.tile(row, (len(G.generators), 1)))


def coset_gset(G: PermGroup, H: Subgroup) -> GSet:
    """G/H: left cosets of H with G acting by left translation."""
    blocks = left_cosets(G, H)
    block_of = np.empty(G.order, dtype=np.int32)
    for b, block in enumerate(blocks):
        block_of[list(block)] = b
    reps = np.array([block[0] for block in blocks])
    rows = np.array(
        [block_of[G.mul_table[gi, reps]] for gi in G.generator_indices], dtype=np.int32,
    ).reshape(len(G.generators), len(blocks))
    labels = tuple(f"{G.elements[r].cycle_string()}H" for r in reps)
    return GSet(G, len(blocks), rows, labels)


def fixed_points(X: GSet, H: Subgroup) -> np.ndarray:
    """Points fixed by every element of H (ascending)."""
    _require_acting(X, H)
    points = np.arange(X.size, dtype=_dtype(X.size))
    fixed = np.ones(X.size, dtype=bool)
    for g in H.generators:
        fixed &= X.image(g, points) == points
    return np.flatnonzero(fixed)


def count_fixed_points(X: GSet, H: Subgroup) -> int:
    return int(fixed_points(X, H).size)


def disjoint_union(X: GSet, Y: GSet) -> GSet:
    _require_same_group(X, Y)
    rows = np.hstack([
        X.generator_action.astype(np.int64),
        _rows_for(Y, X.group).astype(np.int64) + X.size,
    ]).astype(_dtype(X.size + Y.size))
    labels = None
    if X.labels is not None and Y.labels is not None:
        labels = X.labels + Y.labels
    return GSet(X.group, X.size + Y.size, rows, labels)


def product(X: GSet, Y: GSet) -> GSet:
    """Cartesian product with the diagonal action; (x, y) is point x*|Y| + y."""
    _require_same_group(X, Y)
    size = X.size * Y.size
    xr = X.generator_action.astype(np.int64)
    yr = _rows_for(Y, X.group).astype(np.int64)
    rows = (xr[:, :, None] * Y.size + yr[:, None, :]).reshape(len(X.group.generators), size)
    return GSet(X.group, size, rows.astype(_dtype(size)))


def function_gset(G: PermGroup, k: int, max_points: int = DEFAULT_MAX_POINTS) -> GSet:
    """All functions G -> {1..k} with (g.f)(g') = f(g'g).

    Function f is the point sum_i (f(g_i) - 1) * k^i, with g_i in canonical
    element order. Each generator permutes the digit positions, so its row is
    a transpose of the index array.

    Raises:
        EnumerationCapExceeded: k^|G| > max_points.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    n = G.order
    size = k**n
    if size > max_points:
        raise EnumerationCapExceeded(
            f"{k}^{n} functions exceed the enumeration cap {max_points}", G.label,
        )
    if k <= 1:
        return GSet(G, size, np.zeros((len(G.generators), size), dtype=np.int32))

    dtype = _dtype(size)
    base = np.arange(size, dtype=dtype).reshape((k,) * n, order="F")
    rows = np.empty((len(G.generators), size), dtype=dtype)
    for s, gi in enumerate(G.generator_indices):
        # digit i of g.f is digit mul[i, g] of f
        positions = G.mul_table[:, gi]
        axes = np.argsort(positions)
        rows[s] = np.transpose(base, axes=axes).ravel(order="F")
    return GSet(G, size, rows)


# =============================================================================
# Orbits
# =============================================================================

@dataclass(frozen=True, slots=True)
class Orbit:
    """One orbit: least point, size and stabilizer of the least point."""

    representative: int
    size: int
    stabilizer: Subgroup


@dataclass(frozen=True, slots=True)
class _OrbitData:
    representatives: np.ndarray    # ascending
    stabilizer_masks: tuple[int, ...]
    stabilizer_of_rep: np.ndarray  # index into stabilizer_masks per representative


def _orbit_labels(X: GSet) -> np.ndarray:
    """Least point of each point's orbit (min propagation with pointer jumping)."""
    labels = np.arange(X.size, dtype=_dtype(X.size))
    while True:
        new = labels
        for row in X.generator_action:
            new = np.minimum(new, new[row])
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def _orbit_data(X: GSet) -> _OrbitData:
    cached = X._cache.get("orbits")
    if cached is not None:
        return cached
    labels = _orbit_labels(X)
    reps = np.flatnonzero(labels == np.arange(X.size)).astype(_dtype(X.size))
    n = X.group.order
    fixes = np.empty((reps.size, n), dtype=bool)
    for g in range(n):
        fixes[:, g] = X.image(g, reps) == reps
    packed = np.packbits(fixes, axis=1, bitorder="little")
    if reps.size:
        unique, inverse = np.unique(packed, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
    else:
        unique, inverse = packed[:0], np.empty(0, dtype=np.int64)
    masks = tuple(int.from_bytes(row.tobytes(), "little") for row in unique)
    data = _OrbitData(reps, masks, inverse)
    X._cache["orbits"] = data
    return data


def orbits(X: GSet) -> tuple[Orbit, ...]:
    """Orbits ordered by least point, each with the exact stabilizer of that point."""
    data = _orbit_data(X)
    n = X.group.order
    stabilizers = [Subgroup(X.group, m) for m in data.stabilizer_masks]
    return tuple(
        Orbit(int(rep), n // stabilizers[s].order, stabilizers[s])
        for rep, s in zip(data.representatives, data.stabilizer_of_rep)
    )


def orbit_type_counts(X: GSet, lattice: SubgroupLattice | None = None) -> tuple[int, ...]:
    """Number of orbits whose stabilizers lie in each conjugacy class."""
    if lattice is None:
        lattice = subgroup_lattice(X.group)
    if not lattice.group.same_elements(X.group):
        raise GroupMismatch(f"{X.group.label} vs lattice of {lattice.group.label}")
    data = _orbit_data(X)
    per_mask = np.bincount(data.stabilizer_of_rep, minlength=len(data.stabilizer_masks))
    counts = [0] * lattice.class_count
    for mask, count in zip(data.stabilizer_masks, per_mask.tolist()):
        counts[lattice.class_of(mask)] += count
    return tuple(counts)


def is_isomorphic(X: GSet, Y: GSet, lattice: SubgroupLattice | None = None) -> bool:
    """Isomorphism of finite G-sets: same multiset of orbit stabilizer classes."""
    _require_same_group(X, Y)
    if X.size != Y.size:
        return False
    return orbit_type_counts(X, lattice) == orbit_type_counts(Y, lattice)


# =============================================================================
# Change of group
# =============================================================================

def restrict(X: GSet, H: Subgroup) -> GSet:
    """X viewed as an H-set (over H.as_group())."""
    _require_acting(X, H)
    target = H.as_group()
    members = H.members
    if target.generators:
        rows = np.stack([X.act(members[g]) for g in target.generator_indices])
    else:
        rows = np.empty((0, X.size), dtype=_dtype(X.size))
    return GSet(target, X.size, rows, X.labels)


def _local_positions(K: PermGroup, H: Subgroup) -> np.ndarray:
    position = np.full(K.order, -1, dtype=np.int64)
    position[list(H.members)] = np.arange(H.order)
    return position


def induce(X: GSet, K: PermGroup, max_points: int = DEFAULT_MAX_POINTS) -> GSet:
    """K x_H X for X an H-set with H <= K.

    Point (c, x) = c*|X| + x stands for [t_c, x], t_c the least member of the
    c-th left coset of H. k.[t_c, x] = [t_c', h.x] where k t_c = t_c' h.
    """
    H = K.embed(X.group)
    blocks = left_cosets(K, H)
    m = len(blocks)
    size = m * X.size
    if size > max_points:
        raise EnumerationCapExceeded(
            f"induced set of {size} points exceeds cap {max_points}", K.label,
        )
    block_of = np.empty(K.order, dtype=np.int64)
    for b, block in enumerate(blocks):
        block_of[list(block)] = b
    reps = [block[0] for block in blocks]
    position = _local_positions(K, H)
    mul, inv = K.mul_table, K.inverse_table

    rows = np.empty((len(K.generators), size), dtype=_dtype(size))
    for s, gi in enumerate(K.generator_indices):
        for c, t in enumerate(reps):
            y = int(mul[gi, t])
            c2 = int(block_of[y])
            h = int(mul[inv[reps[c2]], y])
            rows[s, c * X.size:(c + 1) * X.size] = c2 * X.size + X.act(int(position[h]))
    return GSet(K, size, rows)


def coinduce(X: GSet, K: PermGroup, max_points: int = DEFAULT_MAX_POINTS) -> GSet:
    """H-equivariant maps f: K -> X (f(hk) = h.f(k)) with (k.f)(k') = f(k'k).

    f is stored by its values on the least members r_j of the right cosets
    H r_j, as the point sum_j f(r_j) * |X|^j.

    Raises:
        EnumerationCapExceeded: |X|^[K:H] > max_points.
    """
    H = K.embed(X.group)
    blocks = right_cosets(K, H)
    m = len(blocks)
    base = X.size
    size = base**m
    if size > max_points:
        raise EnumerationCapExceeded(
            f"{base}^{m} maps exceed the enumeration cap {max_points}", K.label,
        )
    if base <= 1:
        return GSet(K, size, np.zeros((len(K.generators), size), dtype=np.int32))

    block_of = np.empty(K.order, dtype=np.int64)
    for b, block in enumerate(blocks):
        block_of[list(block)] = b
    reps = [block[0] for block in blocks]
    position = _local_positions(K, H)
    mul, inv = K.mul_table, K.inverse_table
    dims = (base,) * m
    dtype = _dtype(size)

    rows = np.empty((len(K.generators), size), dtype=dtype)
    for s, gi in enumerate(K.generator_indices):
        # (k.f)(r_j) = h'.f(r_j') where r_j k = h' r_j'
        sources, actions = [], []
        for r in reps:
            y = int(mul[r, gi])
            j2 = int(block_of[y])
            h = int(mul[y, inv[reps[j2]]])
            sources.append(j2)
            actions.append(X.act(int(position[h])))
        for start in range(0, size, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, size), dtype=np.int64)
            digits = np.unravel_index(idx, dims, order="F")
            new_digits = tuple(actions[j][digits[sources[j]]] for j in range(m))
            rows[s, start:start + idx.size] = np.ravel_multi_index(new_digits, dims, order="F")
    return GSet(K, size, rows)


def transport(X: GSet, H: Subgroup, g: Permutation | int) -> GSet:
    """Conjugate an H-set to a gHg^-1-set: k'.x := (g^-1 k' g).x on the same points."""
    if not H.as_group().same_elements(X.group):
        raise GroupMismatch(f"{X.group.label} is not the acting subgroup")
    G = H.parent
    gi = g if isinstance(g, int) else G.index_of(g)
    target = conjugate_subgroup(H, gi)
    target_group = target.as_group()
    conj = G.conjugation_table()
    g_inv = int(G.inverse_table[gi])
    position = _local_positions(G, H)
    rows = [
        X.act(int(position[conj[g_inv, target.members[t]]]))
        for t in target_group.generator_indices
    ]
    stacked = np.stack(rows) if rows else np.empty((0, X.size), dtype=_dtype(X.size))
    return GSet(target_group, X.size, stacked, X.labels)


# =============================================================================
# Debug output
# =============================================================================

def dump_action(X: GSet) -> str:
    """Plain-text action grid: one line per element, images of points 0..size-1."""
    table = X.action_table()
    width = max(len(str(max(X.size - 1, 0))), 1)
    elems = [p.cycle_string() for p in X.group.elements]
    name_width = max(len(e) for e in elems)
    lines = [" " * name_width + " | " + " ".join(f"{x:>{width}}" for x in range(X.size))]
    for g, name in enumerate(elems):
        lines.append(f"{name:<{name_width}} | " + " ".join(f"{int(y):>{width}}" for y in table[g]))
    return "\n".join(lines)


def orbit_size_multiset(X: GSet) -> Counter:
    """Multiset of orbit sizes (debug helper for golden comparisons)."""
    return Counter(o.size for o in orbits(X))
