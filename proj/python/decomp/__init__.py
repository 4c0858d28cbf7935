"""Exact-arithmetic checks for filtered graded decompositions."""

try:
    from ._decomp import (
        EngineError,
        canonical_text,
        family_ranks,
        generate,
        report_file,
        run_file,
        validate_file,
    )
except ImportError:
    from _decomp import (
        EngineError,
        canonical_text,
        family_ranks,
        generate,
        report_file,
        run_file,
        validate_file,
    )

__all__ = [
    "EngineError",
    "canonical_text",
    "family_ranks",
    "generate",
    "report_file",
    "run_file",
    "validate_file",
]
