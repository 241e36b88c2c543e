"""Tambara Service: build instances from functor specs and run their checks."""

from dataclasses import dataclass, replace

import polars as pl

from tamlab.domain.errors import SpecParseError
from tamlab.domain.perm_core import PermGroup, subgroup_lattice
from tamlab.domain.tambara import (
    AxiomReport,
    BurnsideInstance,
    FixedPointInstance,
    TambaraInstance,
    UnitLevels,
    axiom_report,
    canonical_map_report,
    unit_levels,
)
from tamlab.infrastructure.config import DEFAULT_CONFIG, EngineConfig

CANONICAL_NORM_KS = range(5)


@dataclass(frozen=True)
class LevelsReport:
    """unit_levels for k = 0..k_max on one instance."""

    instance: str
    group: str
    classes: tuple[str, ...]
    rows: tuple[UnitLevels, ...]

    @property
    def consistent(self) -> bool:
        return all(r.consistent and r.restriction_ok for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "group": self.group,
            "classes": list(self.classes),
            "consistent": self.consistent,
            "results": [r.to_dict() for r in self.rows],
        }

    def to_frame(self) -> pl.DataFrame:
        data: dict[str, list] = {"k": [r.k for r in self.rows]}
        for i, label in enumerate(self.classes):
            data[label] = [r.units[i] for r in self.rows]
        data["consistent"] = [r.consistent for r in self.rows]
        return pl.DataFrame(data)


class TambaraService:
    """Instance construction plus axiom and unit-level checks.

    Example:
        >>> service = TambaraService()
        >>> service.levels(cyclic(2), FunctorSpec.parse("fixed:n=5"), 4).consistent
        True
    """

    def __init__(self, config: EngineConfig = DEFAULT_CONFIG):
        self.config = config

    def build_instance(self, G: PermGroup, spec) -> TambaraInstance:
        """spec is a FunctorSpec (kind "burnside" or "fixed")."""
        lattice = subgroup_lattice(G, self.config.max_order)
        if spec.kind == "burnside":
            return BurnsideInstance(G, lattice, self.config.max_points)
        if spec.kind == "fixed":
            if spec.diagonal:
                return FixedPointInstance.diagonal(G, spec.modulus, lattice)
            return FixedPointInstance.regular(G, spec.modulus, lattice)
        raise SpecParseError("unknown functor kind", spec.kind)

    def axioms(self, G: PermGroup, spec, samples: int, seed: int | None = None) -> AxiomReport:
        """Structure-map axioms followed by the canonical-map checks, one report."""
        seed = self.config.seed if seed is None else seed
        T = self.build_instance(G, spec)
        structure = axiom_report(T, samples, seed)
        canonical = canonical_map_report(T, CANONICAL_NORM_KS, samples, seed)
        return replace(structure, checks=structure.checks + canonical.checks)

    def levels(self, G: PermGroup, spec, k_max: int) -> LevelsReport:
        if k_max < 0:
            raise ValueError(f"k_max must be non-negative, got {k_max}")
        T = self.build_instance(G, spec)
        rows = tuple(unit_levels(T, k) for k in range(k_max + 1))
        return LevelsReport(T.name, G.label, T.lattice.labels, rows)
