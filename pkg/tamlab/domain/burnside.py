"""Burnside ring A(G) via the table of marks.

Ring arithmetic runs through the ghost map: an element is multiplied by
taking marks pointwise and solving the triangular marks system back into
basis coefficients. All arithmetic is exact on Python integers.

Basis elements [G/H_j] follow the canonical class order of the subgroup
lattice, so class 0 is [G/e] and the last class is [G/G] = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
import polars as pl
from sympy import isprime, primefactors

from tamlab.domain.errors import (
    EnumerationCapExceeded,
    InvariantViolation,
    LatticeMismatch,
    NotASubgroup,
    NotIntegral,
)
from tamlab.domain.gset import (
    DEFAULT_MAX_POINTS,
    GSet,
    coset_gset,
    count_fixed_points,
    disjoint_union,
    empty_gset,
    function_gset,
    orbit_type_counts,
    product,
)
from tamlab.domain.perm_core import (
    DEFAULT_MAX_ORDER,
    LATTICE_CACHE_SIZE,
    PermGroup,
    Subgroup,
    SubgroupLattice,
    conjugate_subgroup,
    double_cosets,
    subgroup_lattice,
)


DIRECT_COUNT_LIMIT = 1 << 20  # function G-sets small enough to recount fixed points directly


# =============================================================================
# Table of marks
# =============================================================================

@dataclass(frozen=True, eq=False)
class TableOfMarks:
    """m[i][j] = number of points of G/H_j fixed by H_i.

    Upper-triangular in canonical class order, with m[i][i] = [N_G(H_i):H_i].
    """

    lattice: SubgroupLattice
    m: tuple[tuple[int, ...], ...]

    @property
    def group(self) -> PermGroup:
        return self.lattice.group

    @property
    def size(self) -> int:
        return len(self.m)

    def basis_label(self, j: int) -> str:
        return f"[{self.group.label}/{self.lattice.subgroup_label(j)}]"

    def to_dict(self) -> dict:
        return {
            "group": self.group.label,
            "classes": list(self.lattice.labels),
            "matrix": [list(row) for row in self.m],
        }

    def format(self) -> str:
        """Aligned text table, rows = subgroup classes, columns = basis G-sets."""
        headers = [self.basis_label(j) for j in range(self.size)]
        row_names = list(self.lattice.labels)
        width = max(len(h) for h in headers)
        name_width = max(len(r) for r in row_names)
        lines = [" " * name_width + "  " + " ".join(f"{h:>{width}}" for h in headers)]
        for name, row in zip(row_names, self.m):
            lines.append(f"{name:<{name_width}}  " + " ".join(f"{v:>{width}}" for v in row))
        return "\n".join(lines)


def table_of_marks(G: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> TableOfMarks:
    """Marks table of G by fixed-point counts on the coset G-sets."""
    return _table_for(subgroup_lattice(G, max_order))


@lru_cache(maxsize=LATTICE_CACHE_SIZE)
def _table_for(lattice: SubgroupLattice) -> TableOfMarks:
    G = lattice.group
    reps = lattice.class_reps
    c = len(reps)
    columns = [coset_gset(G, rep) for rep in reps]
    m = [[0] * c for _ in range(c)]
    for j, X in enumerate(columns):
        for i in range(j + 1):
            if lattice.subconjugacy[i, j]:
                m[i][j] = count_fixed_points(X, reps[i])

    for i in range(c):
        if m[i][i] != lattice.weyl_index[i]:
            raise InvariantViolation("diagonal mark differs from the Weyl index", lattice.labels[i])
    return TableOfMarks(lattice, tuple(tuple(row) for row in m))


# =============================================================================
# Elements
# =============================================================================

def _require_same_table(a: TableOfMarks, b: TableOfMarks) -> None:
    if a is not b:
        raise LatticeMismatch(f"{a.group.label} vs {b.group.label}")


@dataclass(frozen=True, slots=True)
class MarksVector:
    """values[i] = chi^{H_i}(x)."""

    table: TableOfMarks
    values: tuple[int, ...]

    def to_dict(self) -> dict:
        return dict(zip(self.table.lattice.labels, self.values))


@dataclass(frozen=True, slots=True)
class BurnsideElement:
    """Integer combination of the basis [G/H_j] (any sign)."""

    table: TableOfMarks
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.table.size:
            raise LatticeMismatch(
                f"{len(self.coeffs)} coefficients for {self.table.size} classes",
                self.table.group.label,
            )

    def _coerce(self, other: BurnsideElement | int) -> BurnsideElement:
        if isinstance(other, int):
            return int_embed(self.table, other)
        _require_same_table(self.table, other.table)
        return other

    def __add__(self, other: BurnsideElement | int) -> BurnsideElement:
        other = self._coerce(other)
        return BurnsideElement(self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement(self.table, tuple(-a for a in self.coeffs))

    def __sub__(self, other: BurnsideElement | int) -> BurnsideElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> BurnsideElement:
        return self._coerce(other) - self

    def __mul__(self, other: BurnsideElement | int) -> BurnsideElement:
        if isinstance(other, int):
            return BurnsideElement(self.table, tuple(a * other for a in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> BurnsideElement:
        if exponent < 0:
            raise ValueError("negative powers are not defined in A(G)")
        values = ghost(self).values
        return from_marks([v**exponent for v in values], self.table)

    @property
    def marks(self) -> tuple[int, ...]:
        return ghost(self).values

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def to_dict(self) -> dict:
        return {
            "group": self.table.group.label,
            "coeffs": list(self.coeffs),
            "marks": list(self.marks),
            "text": format_element(self),
        }

    def __str__(self) -> str:
        return format_element(self)


def basis(table: TableOfMarks, j: int) -> BurnsideElement:
    coeffs = [0] * table.size
    coeffs[j] = 1
    return BurnsideElement(table, tuple(coeffs))


def int_embed(table: TableOfMarks, k: int) -> BurnsideElement:
    """k * [G/G]."""
    coeffs = [0] * table.size
    coeffs[-1] = k
    return BurnsideElement(table, tuple(coeffs))


def zero(table: TableOfMarks) -> BurnsideElement:
    return int_embed(table, 0)


def one(table: TableOfMarks) -> BurnsideElement:
    return int_embed(table, 1)


def format_element(x: BurnsideElement) -> str:
    """"1·[C2/e] + 2·[C2/C2]" style, zero coefficients omitted."""
    terms = []
    for j, a in enumerate(x.coeffs):
        if a == 0:
            continue
        label = x.table.basis_label(j)
        if not terms:
            terms.append(f"{a}·{label}")
        else:
            sign = "-" if a < 0 else "+"
            terms.append(f"{sign} {abs(a)}·{label}")
    return " ".join(terms) if terms else "0"


# =============================================================================
# Ghost map
# =============================================================================

def ghost(x: BurnsideElement) -> MarksVector:
    m = x.table.m
    values = tuple(
        sum(m[i][j] * x.coeffs[j] for j in range(i, len(x.coeffs)) if m[i][j])
        for i in range(len(x.coeffs))
    )
    return MarksVector(x.table, values)


def from_marks(v: MarksVector | Sequence[int], table: TableOfMarks | None = None) -> BurnsideElement:
    """Invert the ghost map by back-substitution from the last class.

    Raises:
        NotIntegral: v is not the marks vector of any element; the exception
            carries the first class (from the top) where division failed.
    """
    if isinstance(v, MarksVector):
        if table is not None:
            _require_same_table(table, v.table)
        table, values = v.table, v.values
    else:
        if table is None:
            raise ValueError("a table of marks is required for a bare marks sequence")
        values = tuple(int(a) for a in v)
    if len(values) != table.size:
        raise LatticeMismatch(f"{len(values)} marks for {table.size} classes", table.group.label)

    m = table.m
    c = table.size
    coeffs = [0] * c
    for j in range(c - 1, -1, -1):
        rest = values[j] - sum(m[j][l] * coeffs[l] for l in range(j + 1, c) if m[j][l])
        q, r = divmod(rest, m[j][j])
        if r:
            raise NotIntegral(
                f"marks vector is not in the image of the ghost map at {table.lattice.labels[j]}",
                j,
            )
        coeffs[j] = q
    return BurnsideElement(table, tuple(coeffs))


def mul(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    _require_same_table(x.table, y.table)
    gx, gy = ghost(x).values, ghost(y).values
    try:
        return from_marks([a * b for a, b in zip(gx, gy)], x.table)
    except NotIntegral as e:
        raise InvariantViolation("product of ghost images left the image", str(e))


def add(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    return x + y


def neg(x: BurnsideElement) -> BurnsideElement:
    return -x


# =============================================================================
# G-set bridge
# =============================================================================

def decompose(X: GSet, table: TableOfMarks) -> BurnsideElement:
    """Class of a G-set: orbit counts per stabilizer class."""
    return BurnsideElement(table, orbit_type_counts(X, table.lattice))


def realize(x: BurnsideElement) -> GSet:
    """A G-set representing a nonnegative element."""
    if not x.is_nonnegative():
        raise ValueError(f"only nonnegative elements are G-sets: {format_element(x)}")
    G = x.table.group
    X = empty_gset(G)
    for j, a in enumerate(x.coeffs):
        if a:
            block = coset_gset(G, x.table.lattice.class_reps[j])
            for _ in range(a):
                X = disjoint_union(X, block)
    return X


def mul_oracle(table: TableOfMarks, i: int, j: int) -> BurnsideElement:
    """[G/H_i]·[G/H_j] by orbit decomposition of the product G-set."""
    G = table.group
    reps = table.lattice.class_reps
    return decompose(product(coset_gset(G, reps[i]), coset_gset(G, reps[j])), table)


# =============================================================================
# Norms
# =============================================================================

def _as_table(G: PermGroup | TableOfMarks) -> TableOfMarks:
    return G if isinstance(G, TableOfMarks) else table_of_marks(G)


def norm_marks(table: TableOfMarks, k: int) -> tuple[int, ...]:
    """Marks of nm_e^G(k): k^[G:H_i] per class."""
    return tuple(k**idx for idx in table.lattice.index_of)


def _norm(table: TableOfMarks, k: int, method: str, max_points: int) -> tuple[BurnsideElement, bool]:
    k = abs(k)
    by_marks = from_marks(norm_marks(table, k), table)
    enumerable = k**table.group.order <= max_points
    if method == "enumerate" and not enumerable:
        raise EnumerationCapExceeded(
            f"{k}^{table.group.order} functions exceed the enumeration cap {max_points}",
            table.group.label,
        )
    enumerated = method == "enumerate" or (method == "auto" and enumerable)
    result = by_marks
    if enumerated:
        result = decompose(function_gset(table.group, k, max_points), table)
        if result != by_marks:
            raise InvariantViolation(
                "enumerated norm disagrees with the marks formula",
                f"{table.group.label}, k={k}",
            )
    if not result.is_nonnegative():
        raise InvariantViolation("norm has a negative coefficient", f"{table.group.label}, k={k}")
    return result, enumerated


def norm_int(
    G: PermGroup | TableOfMarks,
    k: int,
    *,
    method: str = "auto",
    max_points: int = DEFAULT_MAX_POINTS,
) -> BurnsideElement:
    """nm_e^G(k): the G-set of functions G -> {1..k}.

    method "auto" enumerates when k^|G| <= max_points and falls back to the
    marks formula otherwise; "marks" and "enumerate" force a path. Negative
    k is replaced by |k|.

    Raises:
        InvariantViolation: The two paths disagree, or a coefficient is negative.
        EnumerationCapExceeded: method="enumerate" beyond the cap.
    """
    if method not in ("auto", "marks", "enumerate"):
        raise ValueError(f"unknown norm method: {method}")
    return _norm(_as_table(G), k, method, max_points)[0]


def norm_marks_between(x: BurnsideElement, H: Subgroup, target: TableOfMarks) -> BurnsideElement:
    """nm_H^K(x) for x in A(H), H <= K = target.group, via the double coset formula.

    chi^L(nm x) = prod over H r L of chi^{H ∩ rLr^-1}(x). This defines the
    norm on virtual elements and agrees with coinduction on G-sets.
    """
    K = target.group
    if H.parent is not K:
        raise NotASubgroup(f"subgroup does not belong to {K.label}")
    if not x.table.group.same_elements(H.as_group()):
        raise LatticeMismatch(f"element lives over {x.table.group.label}, not the subgroup")
    source_marks = ghost(x).values
    source_lattice = x.table.lattice
    values = []
    for L in target.lattice.class_reps:
        value = 1
        for block in double_cosets(K, H, L):
            r = block[0]
            inner = Subgroup(K, H.member_mask & conjugate_subgroup(L, r).member_mask)
            value *= source_marks[source_lattice.class_of(H.from_parent(inner).member_mask)]
        values.append(value)
    return from_marks(values, target)


# =============================================================================
# Lemma: marks of norms
# =============================================================================

@dataclass(frozen=True, slots=True)
class LemmaCell:
    k: int
    class_index: int
    label: str
    index: int
    expected: int
    observed: int
    enumerative: bool

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "class": self.label,
            "index": self.index,
            "expected": self.expected,
            "observed": self.observed,
            "enumerative": self.enumerative,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class LemmaReport:
    group: str
    k_max: int
    cells: tuple[LemmaCell, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def enumerated_cells(self) -> int:
        return sum(1 for c in self.cells if c.enumerative)

    @property
    def failures(self) -> tuple[LemmaCell, ...]:
        return tuple(c for c in self.cells if not c.passed)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "k_max": self.k_max,
            "passed": self.passed,
            "cells": len(self.cells),
            "enumerated_cells": self.enumerated_cells,
            "failures": [c.to_dict() for c in self.failures],
        }

    def to_frame(self) -> pl.DataFrame:
        """One row per (k, class); marks are left out since they outgrow Int64."""
        return pl.DataFrame(
            {
                "k": [c.k for c in self.cells],
                "class": [c.label for c in self.cells],
                "index": [c.index for c in self.cells],
                "enumerative": [c.enumerative for c in self.cells],
                "passed": [c.passed for c in self.cells],
            },
            schema={"k": pl.Int64, "class": pl.Utf8, "index": pl.Int64,
                    "enumerative": pl.Boolean, "passed": pl.Boolean},
        )


def lemma_cells(table: TableOfMarks, k: int, max_points: int = DEFAULT_MAX_POINTS) -> tuple[LemmaCell, ...]:
    """Check chi^{H_i}(nm_e^G(k)) = k^[G:H_i] for every class at one k."""
    lattice = table.lattice
    n = table.group.order
    enumerable = k**n <= max_points
    if enumerable:
        F = function_gset(table.group, k, max_points)
        norm = decompose(F, table)
        if norm != norm_int(table, k, method="marks"):
            raise InvariantViolation(
                "enumerated norm disagrees with the marks formula",
                f"{table.group.label}, k={k}",
            )
        observed = list(ghost(norm).values)
        if k**n <= DIRECT_COUNT_LIMIT:
            direct = [count_fixed_points(F, rep) for rep in lattice.class_reps]
            if direct != observed:
                raise InvariantViolation(
                    "fixed-point counts disagree with the ghost of the orbit decomposition",
                    f"{table.group.label}, k={k}",
                )
    else:
        observed = list(ghost(norm_int(table, k, method="marks")).values)

    return tuple(
        LemmaCell(
            k=k,
            class_index=i,
            label=lattice.labels[i],
            index=lattice.index_of[i],
            expected=k ** lattice.index_of[i],
            observed=observed[i],
            enumerative=enumerable,
        )
        for i in range(table.size)
    )


def lemma_check(
    G: PermGroup | TableOfMarks,
    k_max: int,
    max_points: int = DEFAULT_MAX_POINTS,
) -> LemmaReport:
    table = _as_table(G)
    cells: list[LemmaCell] = []
    for k in range(k_max + 1):
        cells.extend(lemma_cells(table, k, max_points))
    return LemmaReport(table.group.label, k_max, tuple(cells))


# =============================================================================
# Units and primes
# =============================================================================

def is_unit(x: BurnsideElement) -> bool:
    """All marks are ±1; cross-checked against x·x = 1."""
    by_marks = all(v in (1, -1) for v in ghost(x).values)
    by_square = mul(x, x) == one(x.table)
    if by_marks != by_square:
        raise InvariantViolation("unit criteria disagree", format_element(x))
    return by_marks


@dataclass(frozen=True, slots=True)
class PrimeDescriptor:
    """Prime ideal ker(A(G) -> Z -> Z/q) through the mark at class_index; q is 0 or prime."""

    class_index: int
    q: int

    def __post_init__(self):
        if self.q != 0 and not isprime(self.q):
            raise ValueError(f"q must be 0 or a prime, got {self.q}")

    def label(self, lattice: SubgroupLattice) -> str:
        return f"({lattice.labels[self.class_index]}, {self.q})"

    def to_dict(self, lattice: SubgroupLattice) -> dict:
        return {"class": lattice.labels[self.class_index], "q": self.q}


def prime_membership(x: BurnsideElement, p: PrimeDescriptor) -> bool:
    mark = ghost(x).values[p.class_index]
    return mark == 0 if p.q == 0 else mark % p.q == 0


@dataclass(frozen=True, slots=True)
class PrimeSupport:
    """Primes containing x.

    descriptors lists (i, p) for the prime factors of each nonzero mark and
    (i, 0) for each zero mark. A zero mark at class i also puts x in (i, q)
    for every prime q; those classes are flagged in zero_classes.
    """

    descriptors: tuple[PrimeDescriptor, ...]
    zero_classes: tuple[int, ...]

    def contains(self, p: PrimeDescriptor) -> bool:
        return p.class_index in self.zero_classes or p in self.descriptors

    def to_dict(self, lattice: SubgroupLattice) -> dict:
        return {
            "primes": [d.to_dict(lattice) for d in self.descriptors],
            "zero_classes": [lattice.labels[i] for i in self.zero_classes],
        }


def relevant_primes(x: BurnsideElement) -> PrimeSupport:
    descriptors = []
    zero_classes = []
    for i, mark in enumerate(ghost(x).values):
        if mark == 0:
            zero_classes.append(i)
            descriptors.append(PrimeDescriptor(i, 0))
        else:
            descriptors.extend(PrimeDescriptor(i, p) for p in primefactors(abs(mark)))
    return PrimeSupport(tuple(descriptors), tuple(zero_classes))


@dataclass(frozen=True, slots=True)
class LocalizationVerdict:
    """Whether x is a unit in A(G)[1/u]; witness is a prime containing x but not u."""

    unit: bool
    witness: PrimeDescriptor | None = None

    def __bool__(self) -> bool:
        return self.unit


def is_unit_in_localization(x: BurnsideElement, u: BurnsideElement) -> LocalizationVerdict:
    """x is a unit in A(G)[1/u] iff every prime containing x also contains u.

    Classes are scanned in canonical order and primes ascending, so the
    witness is deterministic.
    """
    _require_same_table(x.table, u.table)
    for i, (a, b) in enumerate(zip(ghost(x).values, ghost(u).values)):
        if a == 0:
            if b != 0:
                return LocalizationVerdict(False, PrimeDescriptor(i, 0))
            continue
        for p in primefactors(abs(a)):
            if b % p:
                return LocalizationVerdict(False, PrimeDescriptor(i, p))
    return LocalizationVerdict(True)


# =============================================================================
# Main theorem, ring-level core
# =============================================================================

@dataclass(frozen=True, slots=True)
class TheoremCase:
    k: int
    passed: bool
    norm: tuple[int, ...]
    witness: PrimeDescriptor | None = None

    def to_dict(self, lattice: SubgroupLattice) -> dict:
        d = {"k": self.k, "pass": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict(lattice)
        return d


@dataclass(frozen=True)
class TheoremReport:
    """k·1 is a unit after inverting nm_e^G(k), for 1 <= k <= k_max.

    k = 0 is informational only: norm_int(G, 0) = 0 and inverting 0 gives
    the zero ring, where 0 is trivially a unit.
    """

    table: TableOfMarks
    k_max: int
    cases: tuple[TheoremCase, ...]
    zero_case: TheoremCase

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def pass_count(self) -> int:
        return sum(1 for c in self.cases if c.passed)

    def to_dict(self) -> dict:
        lattice = self.table.lattice
        return {
            "group": self.table.group.label,
            "k_max": self.k_max,
            "classes": list(lattice.labels),
            "results": [c.to_dict(lattice) for c in self.cases],
            "k_zero": {
                "counted": False,
                "norm_is_zero": not any(self.zero_case.norm),
                "degenerate_unit": self.zero_case.passed,
            },
        }

    def to_frame(self) -> pl.DataFrame:
        lattice = self.table.lattice
        return pl.DataFrame(
            {
                "k": [c.k for c in self.cases],
                "pass": [c.passed for c in self.cases],
                "witness": [c.witness.label(lattice) if c.witness else None for c in self.cases],
            },
            schema={"k": pl.Int64, "pass": pl.Boolean, "witness": pl.Utf8},
        )


def theorem_case(table: TableOfMarks, k: int) -> TheoremCase:
    k = abs(k)
    u = norm_int(table, k, method="marks")
    verdict = is_unit_in_localization(int_embed(table, k), u)
    return TheoremCase(k, verdict.unit, u.coeffs, verdict.witness)


def verify_main_theorem(G: PermGroup | TableOfMarks, k_max: int) -> TheoremReport:
    table = _as_table(G)
    cases = tuple(theorem_case(table, k) for k in range(1, k_max + 1))
    return TheoremReport(table, k_max, cases, theorem_case(table, 0))


def elements_in_box(table: TableOfMarks, bound: int) -> Iterable[BurnsideElement]:
    """Every element with coefficients in [-bound, bound]."""
    c = table.size
    span = 2 * bound + 1
    for flat in range(span**c):
        coeffs = []
        for _ in range(c):
            flat, r = divmod(flat, span)
            coeffs.append(r - bound)
        yield BurnsideElement(table, tuple(coeffs))


def random_elements(table: TableOfMarks, count: int, bound: int, seed: int = 0) -> list[BurnsideElement]:
    rng = np.random.default_rng(seed)
    draws = rng.integers(-bound, bound + 1, size=(count, table.size))
    return [BurnsideElement(table, tuple(int(a) for a in row)) for row in draws]
