"""Spec strings accepted on the command line.

Group grammar:
    C<n>    cyclic of order n
    D<n>    dihedral of order 2n
    S<n>    symmetric on n points
    A<n>    alternating on n points
    Q8      quaternion group
    V4      Klein four-group
    perm:<degree>:<cycles;cycles;...>   generated by the listed permutations,
            e.g. perm:4:(1 2 3 4);(1 3)

Elements: a bare integer k (k·1) or "[c0,c1,...]" coefficients over the
canonical class order. Functors: "burnside", "fixed:n=<m>", "fixed:n=<m>,diag".
"""

import re
from dataclasses import dataclass

from tamlab.domain import catalog
from tamlab.domain.burnside import BurnsideElement, TableOfMarks, int_embed
from tamlab.domain.errors import SpecParseError
from tamlab.domain.perm_core import DEFAULT_MAX_ORDER, PermGroup, Permutation, enumerate_elements

_NAMED = re.compile(r"^([CDSA])(\d+)$")
_PERM = re.compile(r"^perm:(\d+):(.*)$", re.DOTALL)
_FIXED = re.compile(r"^fixed:n=(\d+)(,diag)?$")

_BUILDERS = {
    "C": catalog.cyclic,
    "D": catalog.dihedral,
    "S": catalog.symmetric,
    "A": catalog.alternating,
}


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group spec; resolve() builds the group under an order cap."""

    text: str
    family: str
    n: int = 0
    degree: int = 0
    generators: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        s = text.strip()
        if s in ("Q8", "V4"):
            return cls(s, s)
        m = _NAMED.match(s)
        if m:
            return cls(s, m.group(1), n=int(m.group(2)))
        m = _PERM.match(s)
        if m:
            degree = int(m.group(1))
            if degree < 1:
                raise SpecParseError("permutation degree must be positive", text)
            gens = tuple(g.strip() for g in m.group(2).split(";") if g.strip())
            return cls(s, "perm", degree=degree, generators=gens)
        raise SpecParseError("unrecognised group spec", text)

    def resolve(self, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
        """Raises SpecParseError, InvalidPermutation or OrderCapExceeded."""
        if self.family == "Q8":
            return catalog.quaternion(max_order)
        if self.family == "V4":
            return catalog.klein_four(max_order)
        if self.family == "perm":
            perms = [Permutation.from_cycles(g, self.degree) for g in self.generators]
            return enumerate_elements(perms, self.degree, max_order=max_order)
        return _BUILDERS[self.family](self.n, max_order)


def parse_group(text: str, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    return GroupSpec.parse(text).resolve(max_order)


@dataclass(frozen=True)
class ElementSpec:
    """k·1 or an explicit coefficient vector."""

    text: str
    k: int | None = None
    coeffs: tuple[int, ...] | None = None

    @classmethod
    def parse(cls, text: str) -> "ElementSpec":
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            body = s[1:-1].strip()
            try:
                coeffs = tuple(int(c) for c in body.split(",")) if body else ()
            except ValueError:
                raise SpecParseError("coefficients must be integers", text)
            return cls(s, coeffs=coeffs)
        try:
            return cls(s, k=int(s))
        except ValueError:
            raise SpecParseError("element must be an integer or [c0,c1,...]", text)

    def resolve(self, table: TableOfMarks) -> BurnsideElement:
        if self.coeffs is None:
            return int_embed(table, self.k)
        if len(self.coeffs) != table.size:
            raise SpecParseError(
                f"expected {table.size} coefficients for {table.group.label}, got {len(self.coeffs)}",
                self.text,
            )
        return BurnsideElement(table, self.coeffs)


def parse_element(text: str, table: TableOfMarks) -> BurnsideElement:
    return ElementSpec.parse(text).resolve(table)


@dataclass(frozen=True)
class FunctorSpec:
    """Which Tambara instance to build."""

    kind: str
    modulus: int = 0
    diagonal: bool = False

    @classmethod
    def parse(cls, text: str) -> "FunctorSpec":
        s = text.strip()
        if s == "burnside":
            return cls("burnside")
        m = _FIXED.match(s)
        if m:
            modulus = int(m.group(1))
            if modulus < 1:
                raise SpecParseError("modulus must be positive", text)
            return cls("fixed", modulus, bool(m.group(2)))
        raise SpecParseError("functor must be burnside, fixed:n=<m> or fixed:n=<m>,diag", text)

    @property
    def name(self) -> str:
        if self.kind == "burnside":
            return "burnside"
        return f"fixed:n={self.modulus}" + (",diag" if self.diagonal else "")
