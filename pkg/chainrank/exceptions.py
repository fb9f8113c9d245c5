"""Exceptions for chainrank."""

from __future__ import annotations


class ChainRankError(Exception):
    """Base error for chainrank."""


class SizeLimitExceeded(ChainRankError):
    """Error group or lattice larger than the configured limit."""


class InvalidPermutation(ChainRankError):
    """Error permutation is not a bijection of the stated degree."""


class InvalidGeneratorFile(ChainRankError):
    """Error generator file is malformed."""


class ParentMismatch(ChainRankError):
    """Error subgroups belong to different groups."""


class NotNormal(ChainRankError):
    """Error subgroup is not normal."""


class NotContained(ChainRankError):
    """Error subgroup is not contained in the carrier."""


class ResourceLimit(ChainRankError):
    """Error tree exploration exceeded the node budget."""


class IllFoundedTree(ChainRankError):
    """Error tree has an infinite branch."""

    def __init__(self, message: str, witness: tuple[object, ...]) -> None:
        """Initialize with the cyclic state path."""
        super().__init__(message, witness)
        self.message = message
        self.witness = witness

    def __str__(self) -> str:
        return self.message


class DslSyntaxError(ChainRankError):
    """Error expression text does not parse."""

    def __init__(self, message: str, line: int, column: int) -> None:
        """Initialize with the position of the offending token."""
        super().__init__(message, line, column)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class UnboundParameter(ChainRankError):
    """Error expression uses a parameter without a value."""


class WordResolution(ChainRankError):
    """Error word refers to a generator the group does not have."""


class UnknownGroup(ChainRankError):
    """Error no catalog entry with the given name."""
