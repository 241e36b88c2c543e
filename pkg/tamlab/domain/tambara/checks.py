"""Checks over Tambara instances: the canonical map from A, axioms, unit levels."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

import numpy as np
import polars as pl

from tamlab.domain import burnside
from tamlab.domain.burnside import BurnsideElement
from tamlab.domain.errors import LatticeMismatch
from tamlab.domain.perm_core import Subgroup, conjugate_subgroup, double_cosets
from tamlab.domain.tambara.base import LevelRing, TambaraInstance, lift
from tamlab.domain.tambara.burnside_functor import BurnsideInstance

DEFAULT_SAMPLES = 20
MAX_PAIR_GRID = 256
MAX_CONJUGATORS = 24


# =============================================================================
# Canonical map A -> T
# =============================================================================

def burnside_to_T(T: TambaraInstance, H: Subgroup, x: BurnsideElement):
    """phi_H: A(H) -> T(G/H), [H/L] -> tr_L^H(1), extended additively."""
    table = x.table
    if not table.group.same_elements(H.as_group()):
        raise LatticeMismatch(f"element lives over {table.group.label}, not the subgroup", T.name)
    ring = T.level(H)
    result = ring.zero()
    for j, a in enumerate(x.coeffs):
        if not a:
            continue
        L = lift(H, table.lattice.class_reps[j])
        image = T.apply_tr(L, H, T.level(L).one())
        result = ring.add(result, ring.mul(ring.from_int(a), image))
    return result


# =============================================================================
# Reports
# =============================================================================

@dataclass(frozen=True, slots=True)
class AxiomCheck:
    name: str
    passed: bool
    cases: int
    witness: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed, "cases": self.cases}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True)
class AxiomReport:
    instance: str
    group: str
    seed: int
    sample_count: int
    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "group": self.group,
            "seed": self.seed,
            "samples": self.sample_count,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame(
            {
                "name": [c.name for c in self.checks],
                "pass": [c.passed for c in self.checks],
                "cases": [c.cases for c in self.checks],
                "witness": [c.witness for c in self.checks],
            },
            schema={"name": pl.Utf8, "pass": pl.Boolean, "cases": pl.Int64, "witness": pl.Utf8},
        )


class _Tally:
    """Per-axiom case counter keeping the first failing witness."""

    def __init__(self, names: list[str]):
        self._names = names
        self._cases = {n: 0 for n in names}
        self._witness: dict[str, str] = {}

    def record(self, name: str, ok: bool, witness: Callable[[], str]) -> None:
        self._cases[name] += 1
        if not ok and name not in self._witness:
            self._witness[name] = witness()

    def checks(self) -> tuple[AxiomCheck, ...]:
        return tuple(
            AxiomCheck(n, n not in self._witness, self._cases[n], self._witness.get(n))
            for n in self._names
        )


# =============================================================================
# Sampling helpers
# =============================================================================

def _pairs(xs: list, ys: list) -> list[tuple]:
    if len(xs) * len(ys) <= MAX_PAIR_GRID:
        return list(product(xs, ys))
    return list(zip(xs, ys[1:] + ys[:1]))


def _inclusions(T: TambaraInstance) -> Iterator[tuple[Subgroup, Subgroup]]:
    """One pair H <= K for each subconjugate pair of classes, K a class representative."""
    lattice = T.lattice
    for j in range(lattice.class_count):
        for i in range(j + 1):
            if lattice.subconjugacy[i, j]:
                yield lattice.conjugate_inside(i, j), lattice.class_reps[j]


def _inside(T: TambaraInstance, i: int, K: Subgroup) -> Subgroup | None:
    for sub in T.lattice.classes[i]:
        if sub.member_mask & ~K.member_mask == 0:
            return sub
    return None


def _chains(T: TambaraInstance) -> Iterator[tuple[Subgroup, Subgroup, Subgroup]]:
    lattice = T.lattice
    for l in range(lattice.class_count):
        for j in range(l + 1):
            if not lattice.subconjugacy[j, l]:
                continue
            K = lattice.conjugate_inside(j, l)
            for i in range(j + 1):
                H = _inside(T, i, K)
                if H is not None:
                    yield H, K, lattice.class_reps[l]


def _conjugators(T: TambaraInstance, rng: np.random.Generator) -> list[int]:
    n = T.group.order
    if n <= MAX_CONJUGATORS:
        return list(range(n))
    chosen = set(T.group.generator_indices) | set(rng.choice(n, size=MAX_CONJUGATORS, replace=False).tolist())
    return sorted(int(g) for g in chosen)


def _label(T: TambaraInstance, H: Subgroup) -> str:
    return T.lattice.labels[T.lattice.class_of(H)]


# =============================================================================
# Axiom report
# =============================================================================

AXIOMS = [
    "res_ring_hom",
    "tr_additive",
    "nm_multiplicative",
    "conj_iso",
    "functoriality",
    "frobenius",
    "mackey",
    "res_preserves_inverse",
]


def axiom_report(T: TambaraInstance, sample_count: int = DEFAULT_SAMPLES, seed: int = 0) -> AxiomReport:
    """Check the structure-map laws on seeded samples.

    Checked: res is a unital ring map, tr is additive, nm is multiplicative
    and unital, conj is a ring isomorphism with c_e = id, res/tr/nm/conj
    compose, Frobenius reciprocity, the additive Mackey formula for
    res_H^G tr_K^G, and restriction of inverses.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    rng = np.random.default_rng(seed)
    tally = _Tally(AXIOMS)
    samples: dict[int, list] = {}

    def sample(H: Subgroup) -> list:
        key = H.member_mask
        if key not in samples:
            samples[key] = T.level(H).sample(rng, sample_count)
        return samples[key]

    # res / tr / nm laws and Frobenius along each inclusion
    for H, K in _inclusions(T):
        rH, rK = T.level(H), T.level(K)
        where = f"{_label(T, H)} <= {_label(T, K)}"
        xs_K, xs_H = sample(K), sample(H)

        for x, y in _pairs(xs_K, xs_K[::-1]):
            rx, ry = T.apply_res(K, H, x), T.apply_res(K, H, y)
            tally.record(
                "res_ring_hom",
                rH.equal(T.apply_res(K, H, rK.add(x, y)), rH.add(rx, ry))
                and rH.equal(T.apply_res(K, H, rK.mul(x, y)), rH.mul(rx, ry)),
                lambda: f"{where}: x={rK.format(x)}, y={rK.format(y)}",
            )
        tally.record(
            "res_ring_hom", rH.equal(T.apply_res(K, H, rK.one()), rH.one()), lambda: f"{where}: res(1)",
        )

        for a, b in _pairs(xs_H, xs_H[::-1]):
            tally.record(
                "tr_additive",
                rK.equal(T.apply_tr(H, K, rH.add(a, b)), rK.add(T.apply_tr(H, K, a), T.apply_tr(H, K, b))),
                lambda: f"{where}: a={rH.format(a)}, b={rH.format(b)}",
            )
            tally.record(
                "nm_multiplicative",
                rK.equal(T.apply_nm(H, K, rH.mul(a, b)), rK.mul(T.apply_nm(H, K, a), T.apply_nm(H, K, b))),
                lambda: f"{where}: a={rH.format(a)}, b={rH.format(b)}",
            )
        tally.record("tr_additive", rK.equal(T.apply_tr(H, K, rH.zero()), rK.zero()), lambda: f"{where}: tr(0)")
        tally.record("nm_multiplicative", rK.equal(T.apply_nm(H, K, rH.one()), rK.one()), lambda: f"{where}: nm(1)")

        for a, y in _pairs(xs_H, xs_K):
            lhs = T.apply_tr(H, K, rH.mul(a, T.apply_res(K, H, y)))
            rhs = rK.mul(T.apply_tr(H, K, a), y)
            tally.record(
                "frobenius", rK.equal(lhs, rhs),
                lambda: f"{where}: a={rH.format(a)}, y={rK.format(y)}",
            )

        for x in xs_K:
            inverse = rK.inverse(x)
            if inverse is None:
                continue
            ok = rK.equal(rK.mul(x, inverse), rK.one()) and rH.equal(
                rH.mul(T.apply_res(K, H, x), T.apply_res(K, H, inverse)), rH.one(),
            )
            tally.record("res_preserves_inverse", ok, lambda: f"{where}: x={rK.format(x)}")

    # conjugation
    conjugators = _conjugators(T, rng)
    G = T.group
    for H in T.lattice.class_reps:
        rH = T.level(H)
        xs = sample(H)
        tally.record(
            "conj_iso", all(rH.equal(T.apply_conj(0, H, x), x) for x in xs),
            lambda: f"{_label(T, H)}: c_e is not the identity",
        )
        for g in conjugators:
            gH = conjugate_subgroup(H, g)
            rg = T.level(gH)
            g_inv = int(G.inverse_table[g])
            for x, y in _pairs(xs, xs[::-1]):
                cx, cy = T.apply_conj(g, H, x), T.apply_conj(g, H, y)
                ok = (
                    rg.equal(T.apply_conj(g, H, rH.add(x, y)), rg.add(cx, cy))
                    and rg.equal(T.apply_conj(g, H, rH.mul(x, y)), rg.mul(cx, cy))
                    and rH.equal(T.apply_conj(g_inv, gH, cx), x)
                )
                tally.record(
                    "conj_iso", ok,
                    lambda: f"{_label(T, H)}, g={G.elements[g].cycle_string()}: x={rH.format(x)}",
                )
            tally.record(
                "conj_iso", rg.equal(T.apply_conj(g, H, rH.one()), rg.one()),
                lambda: f"{_label(T, H)}, g={G.elements[g].cycle_string()}: c_g(1)",
            )

    # composition along chains H <= K <= L, and c_g c_h = c_gh
    for H, K, L in _chains(T):
        rH, rL = T.level(H), T.level(L)
        where = f"{_label(T, H)} <= {_label(T, K)} <= {_label(T, L)}"
        for x in sample(L):
            tally.record(
                "functoriality",
                rH.equal(T.apply_res(K, H, T.apply_res(L, K, x)), T.apply_res(L, H, x)),
                lambda: f"{where}: res, x={rL.format(x)}",
            )
        for a in sample(H):
            tally.record(
                "functoriality",
                rL.equal(T.apply_tr(K, L, T.apply_tr(H, K, a)), T.apply_tr(H, L, a))
                and rL.equal(T.apply_nm(K, L, T.apply_nm(H, K, a)), T.apply_nm(H, L, a)),
                lambda: f"{where}: tr/nm, a={rH.format(a)}",
            )
    mul = G.mul_table
    for H in T.lattice.class_reps:
        rH = T.level(H)
        for g, h in _pairs(conjugators, conjugators[::-1]):
            hH = conjugate_subgroup(H, h)
            target = T.level(conjugate_subgroup(H, int(mul[g, h])))
            for x in sample(H)[:4]:
                tally.record(
                    "functoriality",
                    target.equal(T.apply_conj(g, hH, T.apply_conj(h, H, x)), T.apply_conj(int(mul[g, h]), H, x)),
                    lambda: f"{_label(T, H)}: c_g c_h, x={rH.format(x)}",
                )

    # additive Mackey formula for res_H^G tr_K^G
    top = G.whole()
    for H, K in product(T.lattice.class_reps, repeat=2):
        rH, rK = T.level(H), T.level(K)
        for x in sample(K):
            lhs = T.apply_res(top, H, T.apply_tr(K, top, x))
            rhs = rH.zero()
            for block in double_cosets(G, H, K):
                g = block[0]
                g_inv = int(G.inverse_table[g])
                inner = Subgroup(G, K.member_mask & conjugate_subgroup(H, g_inv).member_mask)
                moved = T.apply_conj(g, inner, T.apply_res(K, inner, x))
                rhs = rH.add(rhs, T.apply_tr(conjugate_subgroup(inner, g), H, moved))
            tally.record(
                "mackey", rH.equal(lhs, rhs),
                lambda: f"H={_label(T, H)}, K={_label(T, K)}: x={rK.format(x)}",
            )

    return AxiomReport(T.name, G.label, seed, sample_count, tally.checks())


# =============================================================================
# Canonical map checks
# =============================================================================

CANONICAL_CHECKS = ["phi_ring_hom", "phi_res", "phi_tr", "phi_nm_integers"]


def canonical_map_report(
    T: TambaraInstance,
    ks: range = range(5),
    sample_count: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> AxiomReport:
    """phi = burnside_to_T is a ring map at each level, commutes with res and
    tr on basis elements, and satisfies phi_G(nm_e^G(k)) = nm_e^G(phi_e(k))."""
    A = T if isinstance(T, BurnsideInstance) else BurnsideInstance(T.group, T.lattice)
    rng = np.random.default_rng(seed)
    tally = _Tally(CANONICAL_CHECKS)

    for H in T.lattice.class_reps:
        source, target = A.level(H), T.level(H)
        xs = source.sample(rng, sample_count)
        for x, y in _pairs(xs, xs[::-1]):
            ok = target.equal(
                burnside_to_T(T, H, source.mul(x, y)),
                target.mul(burnside_to_T(T, H, x), burnside_to_T(T, H, y)),
            ) and target.equal(
                burnside_to_T(T, H, source.add(x, y)),
                target.add(burnside_to_T(T, H, x), burnside_to_T(T, H, y)),
            )
            tally.record("phi_ring_hom", ok, lambda: f"{_label(T, H)}: x={source.format(x)}, y={source.format(y)}")
        tally.record(
            "phi_ring_hom", target.equal(burnside_to_T(T, H, source.one()), target.one()),
            lambda: f"{_label(T, H)}: phi(1)",
        )

    for H, K in _inclusions(T):
        where = f"{_label(T, H)} <= {_label(T, K)}"
        tH, tK = T.level(H), T.level(K)
        aH, aK = A.level(H), A.level(K)
        for j in range(aK.table.size):
            b = burnside.basis(aK.table, j)
            tally.record(
                "phi_res",
                tH.equal(burnside_to_T(T, H, A.apply_res(K, H, b)), T.apply_res(K, H, burnside_to_T(T, K, b))),
                lambda: f"{where}: {aK.format(b)}",
            )
        for j in range(aH.table.size):
            b = burnside.basis(aH.table, j)
            tally.record(
                "phi_tr",
                tK.equal(burnside_to_T(T, K, A.apply_tr(H, K, b)), T.apply_tr(H, K, burnside_to_T(T, H, b))),
                lambda: f"{where}: {aH.format(b)}",
            )

    e, top = T.group.trivial(), T.group.whole()
    table_e, table_G = A.level(e).table, A.level(top).table
    for k in ks:
        lhs = burnside_to_T(T, top, burnside.norm_int(table_G, k, method="marks"))
        rhs = T.apply_nm(e, top, burnside_to_T(T, e, burnside.int_embed(table_e, k)))
        tally.record("phi_nm_integers", T.level(top).equal(lhs, rhs), lambda: f"k={k}")

    return AxiomReport(f"{T.name}:canonical", T.group.label, seed, sample_count, tally.checks())


# =============================================================================
# Unit levels
# =============================================================================

@dataclass(frozen=True)
class UnitLevels:
    """Whether k·1 is a unit at each class level; all entries agree when consistent."""

    k: int
    classes: tuple[str, ...]
    units: tuple[bool, ...]
    restriction_ok: bool

    @property
    def consistent(self) -> bool:
        return len(set(self.units)) <= 1

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "units": dict(zip(self.classes, self.units)),
            "consistent": self.consistent,
            "restriction_ok": self.restriction_ok,
        }


def unit_levels(T: TambaraInstance, k: int) -> UnitLevels:
    """Test k·1 for invertibility at every class level.

    When k is a unit at the top level its inverse is restricted to each
    class representative and checked to stay an inverse there.
    """
    lattice = T.lattice
    units = []
    for H in lattice.class_reps:
        ring = T.level(H)
        units.append(ring.is_unit(ring.from_int(k)))

    top = T.group.whole()
    ring_G: LevelRing = T.level(top)
    restriction_ok = True
    inverse = ring_G.inverse(ring_G.from_int(k))
    if inverse is not None:
        for H in lattice.class_reps:
            ring = T.level(H)
            restored = ring.mul(T.apply_res(top, H, ring_G.from_int(k)), T.apply_res(top, H, inverse))
            restriction_ok &= ring.equal(restored, ring.one())
    return UnitLevels(k, lattice.labels, tuple(units), restriction_ok)
