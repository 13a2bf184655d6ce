"""Exception types shared across the package.

The CLI maps each family to its own exit code, so callers can tell a bad
input apart from an unlucky random section or a refused computation.
"""

from __future__ import annotations


class SyzkitError(Exception):
    """Base class for all package errors."""

    exit_code = 1
    kind = "error"


class ParseError(SyzkitError, ValueError):
    """Malformed ideal, syzygy or weight input."""

    exit_code = 2
    kind = "parse_error"


class NoSolution(SyzkitError, ArithmeticError):
    """A linear system over F_p has no solution."""

    kind = "no_solution"


class DegenerateSection(SyzkitError):
    """A random linear section failed a genericity check; reseed or enlarge p."""

    exit_code = 4
    kind = "degenerate_section"


class BudgetExceeded(SyzkitError):
    """A computation was refused because its estimated size exceeds the budget."""

    exit_code = 5
    kind = "budget_exceeded"

    def __init__(self, message: str, sizes: dict | None = None):
        super().__init__(message)
        self.sizes = dict(sizes or {})


class InvalidSyzygy(SyzkitError, ValueError):
    """A coefficient vector is not an element of the requested syzygy space."""

    kind = "invalid_syzygy"
