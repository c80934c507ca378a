"""Transfer factors for classical groups over p-adic fields and R."""

from ._core import (
    EXIT_ARITHMETIC,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_PARSE,
    CommandResult,
    EndoError,
    check,
    compute,
    compute_file,
    hilbert_symbol,
    normalize_document,
    oracle,
    square_class,
    validate,
    validate_file,
)

__all__ = [
    "EXIT_ARITHMETIC",
    "EXIT_INVALID",
    "EXIT_OK",
    "EXIT_PARSE",
    "CommandResult",
    "EndoError",
    "check",
    "compute",
    "compute_file",
    "hilbert_symbol",
    "normalize_document",
    "oracle",
    "square_class",
    "validate",
    "validate_file",
]
