"""Domain Layer: exact group, G-set, Burnside ring and Tambara functor logic.

This layer contains:
- perm_core: permutation groups, subgroups, cosets, subgroup lattice
- catalog: named groups (C<n>, D<n>, S<n>, A<n>, Q8, V4)
- gset: finite G-sets, orbits, induction and coinduction
- burnside: table of marks, ghost map, norms, primes, localization units
- tambara/: Tambara functor interface and instances
"""

from tamlab.domain.errors import (
    TamlabError,
    CapExceeded,
    EnumerationCapExceeded,
    OrderCapExceeded,
    InvariantViolation,
    NotIntegral,
    SpecParseError,
)
from tamlab.domain.perm_core import (
    Permutation,
    PermGroup,
    Subgroup,
    SubgroupLattice,
    enumerate_elements,
    subgroup_lattice,
)
from tamlab.domain.gset import GSet, coset_gset, function_gset, orbits
from tamlab.domain.burnside import (
    BurnsideElement,
    MarksVector,
    PrimeDescriptor,
    TableOfMarks,
    from_marks,
    ghost,
    is_unit,
    is_unit_in_localization,
    lemma_check,
    norm_int,
    table_of_marks,
    verify_main_theorem,
)

__all__ = [
    # Errors
    "TamlabError",
    "CapExceeded",
    "EnumerationCapExceeded",
    "OrderCapExceeded",
    "InvariantViolation",
    "NotIntegral",
    "SpecParseError",
    # Groups
    "Permutation",
    "PermGroup",
    "Subgroup",
    "SubgroupLattice",
    "enumerate_elements",
    "subgroup_lattice",
    # G-sets
    "GSet",
    "coset_gset",
    "function_gset",
    "orbits",
    # Burnside ring
    "BurnsideElement",
    "MarksVector",
    "PrimeDescriptor",
    "TableOfMarks",
    "from_marks",
    "ghost",
    "is_unit",
    "is_unit_in_localization",
    "lemma_check",
    "norm_int",
    "table_of_marks",
    "verify_main_theorem",
]
