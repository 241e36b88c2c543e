"""Permutation groups: elements, subgroups, cosets and the subgroup lattice.

Points are 0-based internally; cycle notation at the interface is 1-based.
Every group keeps its elements sorted by image tuple, so the identity is
always element 0 and element indices are reproducible across runs.

Composition follows function notation: (a * b)(x) = a(b(x)).
"""

from __future__ import annotations

import re
import string
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from tamlab.domain.errors import (
    ElementNotInGroup,
    InvalidPermutation,
    NotASubgroup,
    OrderCapExceeded,
)


DEFAULT_MAX_ORDER = 120
BRUTE_FORCE_MAX_ORDER = 12
# per-group lattice and marks caches
LATTICE_CACHE_SIZE = 64

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def bits_to_mask(indices: Iterable[int]) -> int:
    """Pack element indices into a bitset."""
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def mask_to_bits(mask: int) -> tuple[int, ...]:
    """Unpack a bitset into ascending element indices."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


# =============================================================================
# Permutation
# =============================================================================

@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {0..n-1}, stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InvalidPermutation("images are not a bijection", f"images={self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based cycle notation such as "(1 2)(3 4)".

        Juxtaposed cycles compose right to left: "(1 2)(2 3)" applies (2 3)
        first. An empty string or "()" is the identity.
        """
        stripped = text.strip()
        if _CYCLE_RE.sub("", stripped).strip():
            raise InvalidPermutation("unexpected text outside cycles", repr(text))

        result = cls.identity(degree)
        for body in _CYCLE_RE.findall(stripped):
            tokens = body.split()
            if not tokens:
                continue
            try:
                points = [int(t) - 1 for t in tokens]
            except ValueError:
                raise InvalidPermutation("cycle points must be integers", repr(text))
            if len(set(points)) != len(points):
                raise InvalidPermutation("repeated point in cycle", repr(text))
            if any(p < 0 or p >= degree for p in points):
                raise InvalidPermutation(f"point outside 1..{degree}", repr(text))

            images = list(range(degree))
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
            result = result * cls(tuple(images))
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise InvalidPermutation(
                "degree mismatch in composition", f"{self.degree} vs {other.degree}",
            )
        return Permutation(tuple(self.images[x] for x in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycle_string(self) -> str:
        """1-based cycle notation; "()" for the identity."""
        seen = set()
        parts = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            parts.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
        return "".join(parts) or "()"

    def __str__(self) -> str:
        return self.cycle_string()


# =============================================================================
# PermGroup
# =============================================================================

@dataclass(frozen=True, eq=False)
class PermGroup:
    """A finite permutation group with its elements in canonical order.

    Attributes:
        degree: Number of points acted on.
        generators: Generating permutations as supplied.
        elements: All elements, sorted by image tuple (identity first).
        name: Optional display label (e.g. "S3").

    Derived tables (index-based, shape order x order):
        mul_table[a, b] = index of elements[a] * elements[b]
        inverse_table[a] = index of elements[a]^-1
    words[g] lists generator positions s_0, s_1, ... with
    elements[g] = gen[s_0] * gen[s_1] * ..., used to evaluate actions that
    are stored on generators only.

    Groups compare by identity; use same_elements() for structural equality.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    name: str = ""

    mul_table: np.ndarray = field(init=False, repr=False)
    inverse_table: np.ndarray = field(init=False, repr=False)
    generator_indices: tuple[int, ...] = field(init=False, repr=False)
    words: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        index = {p.images: i for i, p in enumerate(self.elements)}
        n = len(self.elements)

        images = np.array([p.images for p in self.elements], dtype=np.int64).reshape(n, self.degree)
        composed = images[np.arange(n)[:, None, None], images[None, :, :]]
        mul = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                mul[a, b] = index[tuple(composed[a, b].tolist())]
        inverse = np.empty(n, dtype=np.int64)
        for a in range(n):
            inverse[a] = int(np.flatnonzero(mul[a] == 0)[0])

        try:
            gen_idx = tuple(index[g.images] for g in self.generators)
        except KeyError:
            raise NotASubgroup("generator is not among the listed elements", self.name or None)

        words: list[tuple[int, ...] | None] = [None] * n
        words[0] = ()
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s, gi in enumerate(gen_idx):
                y = int(mul[gi, x])
                if words[y] is None:
                    words[y] = (s,) + words[x]
                    queue.append(y)
        if any(w is None for w in words):
            raise NotASubgroup("generators do not generate the listed elements", self.name or None)

        mul.setflags(write=False)
        inverse.setflags(write=False)
        object.__setattr__(self, "mul_table", mul)
        object.__setattr__(self, "inverse_table", inverse)
        object.__setattr__(self, "generator_indices", gen_idx)
        object.__setattr__(self, "words", tuple(words))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_cache", {})

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def label(self) -> str:
        return self.name or f"G{self.order}"

    def same_elements(self, other: PermGroup) -> bool:
        return self is other or (self.degree == other.degree and self.elements == other.elements)

    def index_of(self, perm: Permutation) -> int:
        try:
            return self._index[perm.images]
        except KeyError:
            raise ElementNotInGroup(f"{perm.cycle_string()} is not in {self.label}")

    def contains(self, perm: Permutation) -> bool:
        return perm.images in self._index

    def closure(self, indices: Iterable[int]) -> int:
        """Bitset of the subgroup generated by the given element indices."""
        gens = [int(i) for i in indices]
        mask = 1
        queue = deque([0])
        mul = self.mul_table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(mul[g, x])
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    queue.append(y)
        return mask

    def conjugation_table(self) -> np.ndarray:
        """conj[g, h] = index of g h g^-1."""
        table = self._cache.get("conjugation")
        if table is None:
            mul = self.mul_table
            table = mul[mul, self.inverse_table[:, None]]
            table.setflags(write=False)
            self._cache["conjugation"] = table
        return table

    def whole(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> Subgroup:
        return Subgroup(self, 1)

    def generate(self, elements: Iterable[Permutation | int]) -> Subgroup:
        """Subgroup generated by permutations or element indices."""
        idx = [e if isinstance(e, int) else self.index_of(e) for e in elements]
        return Subgroup(self, self.closure(idx))

    def embed(self, other: PermGroup) -> Subgroup:
        """View a group whose elements all lie in this group as a Subgroup.

        The embedded subgroup's as_group() returns `other` itself.
        """
        if other is self:
            return self.whole()
        if other.degree != self.degree:
            raise NotASubgroup("degree mismatch", f"{other.label} in {self.label}")
        try:
            mask = bits_to_mask(self.index_of(p) for p in other.elements)
        except ElementNotInGroup as e:
            raise NotASubgroup(f"{other.label} is not contained in {self.label}", str(e))
        self._cache.setdefault(("group", mask), other)
        return Subgroup(self, mask)

    def __repr__(self) -> str:
        return f"PermGroup({self.label}, order={self.order}, degree={self.degree})"


def enumerate_elements(
    generators: Sequence[Permutation],
    degree: int,
    max_order: int = DEFAULT_MAX_ORDER,
    name: str = "",
) -> PermGroup:
    """Close a generating set under composition.

    Raises:
        InvalidPermutation: A generator has the wrong degree.
        OrderCapExceeded: The closure has more than max_order elements.
    """
    for g in generators:
        if g.degree != degree:
            raise InvalidPermutation(
                f"generator {g.cycle_string()} has degree {g.degree}, expected {degree}",
            )

    identity = Permutation.identity(degree)
    seen = {identity.images: identity}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for g in generators:
            q = g * p
            if q.images not in seen:
                seen[q.images] = q
                if len(seen) > max_order:
                    raise OrderCapExceeded(
                        f"group order exceeds cap {max_order}", name or None,
                    )
                queue.append(q)

    elements = tuple(seen[k] for k in sorted(seen))
    return PermGroup(degree=degree, generators=tuple(generators), elements=elements, name=name)


# =============================================================================
# Subgroup
# =============================================================================

@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as a bitset over the parent's canonical element order."""

    parent: PermGroup
    member_mask: int

    @classmethod
    def checked(cls, parent: PermGroup, mask: int) -> Subgroup:
        """Construct after verifying identity, closure, inverses and Lagrange."""
        members = mask_to_bits(mask)
        if not mask & 1:
            raise NotASubgroup("identity missing")
        mul = parent.mul_table
        for a in members:
            if not (mask >> int(parent.inverse_table[a])) & 1:
                raise NotASubgroup("not closed under inverse")
            for b in members:
                if not (mask >> int(mul[a, b])) & 1:
                    raise NotASubgroup("not closed under composition")
        if parent.order % len(members):
            raise NotASubgroup("order does not divide the group order")
        return cls(parent, mask)

    @property
    def members(self) -> tuple[int, ...]:
        key = ("members", self.member_mask)
        cached = self.parent._cache.get(key)
        if cached is None:
            cached = mask_to_bits(self.member_mask)
            self.parent._cache[key] = cached
        return cached

    @property
    def order(self) -> int:
        return self.member_mask.bit_count()

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(self.parent.elements[i] for i in self.members)

    @property
    def generators(self) -> tuple[int, ...]:
        """A small generating set (element indices), chosen greedily."""
        key = ("generators", self.member_mask)
        cached = self.parent._cache.get(key)
        if cached is None:
            gens: list[int] = []
            span = 1
            for i in self.members:
                if not (span >> i) & 1:
                    gens.append(i)
                    span = self.parent.closure(gens)
            cached = tuple(gens)
            self.parent._cache[key] = cached
        return cached

    def contains(self, element: int) -> bool:
        return bool((self.member_mask >> element) & 1)

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.parent is other.parent and self.member_mask & ~other.member_mask == 0

    def is_trivial(self) -> bool:
        return self.member_mask == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def as_group(self) -> PermGroup:
        """This subgroup as a PermGroup (element order = induced suborder)."""
        key = ("group", self.member_mask)
        group = self.parent._cache.get(key)
        if group is None:
            if self.is_whole():
                group = self.parent
            else:
                group = PermGroup(
                    degree=self.parent.degree,
                    generators=tuple(self.parent.elements[i] for i in self.generators),
                    elements=self.elements,
                )
            self.parent._cache[key] = group
        return group

    def to_parent(self, inner: Subgroup) -> Subgroup:
        """Lift a subgroup of as_group() to a subgroup of the parent."""
        if inner.parent is not self.as_group():
            raise NotASubgroup("subgroup does not live in this subgroup's group")
        members = self.members
        return Subgroup(self.parent, bits_to_mask(members[i] for i in inner.members))

    def from_parent(self, outer: Subgroup) -> Subgroup:
        """Express a subgroup of the parent contained in self inside as_group()."""
        if not outer.is_subgroup_of(self):
            raise NotASubgroup("subgroup is not contained in this subgroup")
        position = {g: i for i, g in enumerate(self.members)}
        return Subgroup(self.as_group(), bits_to_mask(position[g] for g in outer.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, mask={self.member_mask:#x})"


# =============================================================================
# Cosets and conjugation
# =============================================================================

def _require_parent(G: PermGroup, H: Subgroup) -> None:
    if H.parent is not G:
        raise NotASubgroup(f"subgroup does not belong to {G.label}")


def _blocks(n: int, block_of_seed) -> tuple[tuple[int, ...], ...]:
    covered = bytearray(n)
    blocks = []
    for g in range(n):
        if covered[g]:
            continue
        block = tuple(sorted(block_of_seed(g)))
        for x in block:
            covered[x] = 1
        blocks.append(block)
    return tuple(blocks)


def left_cosets(G: PermGroup, H: Subgroup) -> tuple[tuple[int, ...], ...]:
    """Left cosets gH as blocks of element indices, ordered by least member."""
    _require_parent(G, H)
    mul = G.mul_table
    members = np.array(H.members)
    return _blocks(G.order, lambda g: set(mul[g, members].tolist()))


def right_cosets(G: PermGroup, H: Subgroup) -> tuple[tuple[int, ...], ...]:
    """Right cosets Hg as blocks of element indices, ordered by least member."""
    _require_parent(G, H)
    mul = G.mul_table
    members = np.array(H.members)
    return _blocks(G.order, lambda g: set(mul[members, g].tolist()))


def double_cosets(G: PermGroup, H: Subgroup, K: Subgroup) -> tuple[tuple[int, ...], ...]:
    """Double cosets HgK as blocks of element indices, ordered by least member."""
    _require_parent(G, H)
    _require_parent(G, K)
    mul = G.mul_table
    h = np.array(H.members)
    k = np.array(K.members)
    return _blocks(G.order, lambda g: set(mul[mul[h, g][:, None], k[None, :]].ravel().tolist()))


def conjugate_subgroup(H: Subgroup, g: Permutation | int) -> Subgroup:
    """gHg^-1 as a subgroup of the same parent."""
    G = H.parent
    gi = g if isinstance(g, int) else G.index_of(g)
    if not 0 <= gi < G.order:
        raise ElementNotInGroup(f"element index {gi} out of range for {G.label}")
    conj = G.conjugation_table()
    return Subgroup(G, bits_to_mask(conj[gi, list(H.members)].tolist()))


# =============================================================================
# Subgroup lattice
# =============================================================================

def _class_letter(i: int) -> str:
    letters = string.ascii_lowercase
    return letters[i] if i < len(letters) else f"{letters[i % len(letters)]}{i // len(letters)}"


@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    """All subgroups of a group, partitioned into conjugacy classes.

    Classes are stored in canonical order: by subgroup order, then by the
    least member bitmask among the conjugates (the class representative).
    Class 0 is {e}; the last class is G itself.

    Attributes:
        group: The ambient group.
        all_subgroups: Every subgroup, sorted by (order, mask).
        classes: Conjugacy classes in canonical order, members sorted by mask.
        class_reps: Canonical representative of each class.
        subconjugacy: Boolean matrix, [i, j] true iff class i is subconjugate to class j.
        index_of: [G:H] per class.
        weyl_index: [N_G(H):H] per class.
        labels: Class labels "<order><letter>", e.g. "2a", "2b".
    """

    group: PermGroup
    all_subgroups: tuple[Subgroup, ...]
    classes: tuple[tuple[Subgroup, ...], ...]
    class_reps: tuple[Subgroup, ...]
    subconjugacy: np.ndarray = field(repr=False)
    index_of: tuple[int, ...]
    weyl_index: tuple[int, ...]
    labels: tuple[str, ...]
    _class_by_mask: dict = field(repr=False)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def class_of(self, subgroup: Subgroup | int) -> int:
        """Conjugacy class index of a subgroup (or of its bitmask)."""
        if isinstance(subgroup, Subgroup):
            if subgroup.parent is not self.group:
                raise NotASubgroup(f"subgroup does not belong to {self.group.label}")
            subgroup = subgroup.member_mask
        try:
            return self._class_by_mask[subgroup]
        except KeyError:
            raise NotASubgroup(f"bitmask {subgroup:#x} is not a subgroup of {self.group.label}")

    def conjugate_inside(self, i: int, j: int) -> Subgroup | None:
        """A member of class i contained in the representative of class j."""
        outer = self.class_reps[j].member_mask
        for sub in self.classes[i]:
            if sub.member_mask & ~outer == 0:
                return sub
        return None

    def subgroup_label(self, i: int) -> str:
        """Display name: "e" for the trivial class, the group name for the top."""
        if i == 0:
            return "e"
        if i == self.class_count - 1 and self.group.name:
            return self.group.name
        return self.labels[i]


def subgroup_lattice(G: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> SubgroupLattice:
    """Enumerate all subgroups by cyclic extension and classify them up to conjugacy.

    Raises:
        OrderCapExceeded: |G| > max_order.
    """
    if G.order > max_order:
        raise OrderCapExceeded(f"group order {G.order} exceeds cap {max_order}", G.label)
    return _build_lattice(G)


@lru_cache(maxsize=LATTICE_CACHE_SIZE)
def _build_lattice(G: PermGroup) -> SubgroupLattice:
    n = G.order

    # Cyclic subgroups, then repeated joins with every cyclic subgroup not yet contained
    cyclic: dict[int, int] = {}
    for g in range(n):
        cyclic.setdefault(G.closure([g]), g)
    cyclic_items = sorted(cyclic.items())

    found: dict[int, tuple[int, ...]] = {mask: (g,) for mask, g in cyclic_items}
    frontier = list(found.items())
    while frontier:
        next_frontier = []
        for mask, gens in frontier:
            for cmask, c in cyclic_items:
                if cmask & ~mask == 0:
                    continue
                joined = G.closure(gens + (c,))
                if joined not in found:
                    found[joined] = gens + (c,)
                    next_frontier.append((joined, gens + (c,)))
        frontier = next_frontier

    # Conjugacy classes
    conj = G.conjugation_table()
    class_of_mask: dict[int, int] = {}
    raw_classes: list[list[int]] = []
    for mask in sorted(found, key=lambda m: (m.bit_count(), m)):
        if mask in class_of_mask:
            continue
        members = list(mask_to_bits(mask))
        conjugates = sorted({bits_to_mask(conj[g, members].tolist()) for g in range(n)})
        for m in conjugates:
            class_of_mask[m] = -1
        raw_classes.append(conjugates)

    raw_classes.sort(key=lambda masks: (masks[0].bit_count(), masks[0]))
    for ci, masks in enumerate(raw_classes):
        for m in masks:
            class_of_mask[m] = ci

    classes = tuple(tuple(Subgroup(G, m) for m in masks) for masks in raw_classes)
    reps = tuple(c[0] for c in classes)
    c = len(classes)

    subconj = np.zeros((c, c), dtype=bool)
    for i in range(c):
        for j in range(c):
            outer = reps[j].member_mask
            subconj[i, j] = any(m & ~outer == 0 for m in raw_classes[i])
    subconj.setflags(write=False)

    index_of = tuple(n // r.order for r in reps)
    weyl = tuple(n // (len(cls) * r.order) for cls, r in zip(classes, reps))

    labels = []
    seen_orders: dict[int, int] = {}
    for r in reps:
        k = seen_orders.get(r.order, 0)
        seen_orders[r.order] = k + 1
        labels.append(f"{r.order}{_class_letter(k)}")

    all_subgroups = tuple(
        Subgroup(G, m) for m in sorted(class_of_mask, key=lambda m: (m.bit_count(), m))
    )
    return SubgroupLattice(
        group=G,
        all_subgroups=all_subgroups,
        classes=classes,
        class_reps=reps,
        subconjugacy=subconj,
        index_of=index_of,
        weyl_index=weyl,
        labels=tuple(labels),
        _class_by_mask=class_of_mask,
    )


def brute_force_subgroups(G: PermGroup) -> tuple[int, ...]:
    """All subgroup bitmasks by exhaustive subset search (test oracle, |G| <= 12)."""
    n = G.order
    if n > BRUTE_FORCE_MAX_ORDER:
        raise OrderCapExceeded(
            f"exhaustive search limited to order {BRUTE_FORCE_MAX_ORDER}", G.label,
        )
    mul = G.mul_table
    found = []
    for subset in range(1 << (n - 1)):
        mask = 1 | (subset << 1)
        members = mask_to_bits(mask)
        if all((mask >> int(mul[a, b])) & 1 for a in members for b in members):
            found.append(mask)
    return tuple(sorted(found, key=lambda m: (m.bit_count(), m)))
