"""Exception types shared across the package."""


class UpseError(Exception):
    """Base class for all package errors."""


class InputError(UpseError):
    """Malformed or out-of-range input (files, ranks, ranges, sizes)."""


class StructureError(UpseError):
    """Graph does not have the structure an operation requires."""


class OracleBoundError(UpseError):
    """Brute-force search refused because the instance exceeds the size guard."""
