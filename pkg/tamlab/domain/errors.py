"""Exception hierarchy for the tamlab engine.

Every error raised by the domain layer derives from TamlabError so that the
CLI can map it onto an exit code. Cap errors share the CapExceeded base.
"""


class TamlabError(Exception):
    """Base class for all engine errors."""

    def __init__(self, message: str, context: str | None = None):
        self.context = context
        super().__init__(f"{message}" + (f" ({context})" if context else ""))


class InvalidPermutation(TamlabError):
    """A sequence of images is not a bijection, or cycle notation is malformed."""


class ElementNotInGroup(TamlabError):
    """A permutation is not an element of the group it was used with."""


class NotASubgroup(TamlabError):
    """A set of elements is not a subgroup of the expected parent group."""


class GroupMismatch(TamlabError):
    """Two G-sets are acted on by different groups."""


class NotIntegral(TamlabError):
    """A marks vector is not in the image of the ghost map."""

    def __init__(self, message: str, class_index: int | None = None):
        self.class_index = class_index
        super().__init__(
            message, f"class {class_index}" if class_index is not None else None,
        )


class LatticeMismatch(TamlabError):
    """Burnside elements from different tables of marks were combined."""


class LevelMismatch(TamlabError):
    """Structure map applied between levels that are not related by inclusion."""


class ElementNotInCarrier(TamlabError):
    """Element does not belong to the level ring it was passed to."""


class InvariantViolation(TamlabError):
    """An identity guaranteed by the mathematics failed to hold."""


class SpecParseError(TamlabError):
    """A group, element or functor spec string could not be parsed."""


class ConfigError(TamlabError):
    """An environment or command-line setting has an invalid value."""


class CapExceeded(TamlabError):
    """A configured resource cap would be exceeded."""


class OrderCapExceeded(CapExceeded):
    """Group closure grew beyond the configured order cap."""


class EnumerationCapExceeded(CapExceeded):
    """A G-set would have more points than the enumeration cap allows."""
