"""Tambara functors: levelwise rings with restriction, transfer, norm and conjugation.

This package contains:
- base: LevelRing / TambaraInstance interfaces and structure-map validation
- fixed_point: fixed-point functor of (Z/n)^d with a coordinate action
- burnside_functor: the Burnside functor H -> A(H)
- checks: canonical map from A, axiom report, unit levels
"""

from tamlab.domain.tambara.base import LevelRing, TambaraInstance, lift
from tamlab.domain.tambara.fixed_point import FixedPointInstance, FixedPointLevel
from tamlab.domain.tambara.burnside_functor import BurnsideInstance, BurnsideLevel
from tamlab.domain.tambara.checks import (
    AXIOMS,
    AxiomCheck,
    AxiomReport,
    UnitLevels,
    axiom_report,
    burnside_to_T,
    canonical_map_report,
    unit_levels,
)

__all__ = [
    # Interfaces
    "LevelRing",
    "TambaraInstance",
    "lift",
    # Instances
    "FixedPointInstance",
    "FixedPointLevel",
    "BurnsideInstance",
    "BurnsideLevel",
    # Checks
    "AXIOMS",
    "AxiomCheck",
    "AxiomReport",
    "UnitLevels",
    "axiom_report",
    "burnside_to_T",
    "canonical_map_report",
    "unit_levels",
]
