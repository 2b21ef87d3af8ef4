"""Exact solvers for sparse integer linear systems."""

from fractions import Fraction

from ._core import (
    ALGORITHMS,
    DimensionMismatch,
    Error,
    InvalidParams,
    ProjectionFailure,
    Singular,
    generate,
    solve,
    verify,
)

__all__ = [
    "ALGORITHMS",
    "DimensionMismatch",
    "Error",
    "InvalidParams",
    "ProjectionFailure",
    "Singular",
    "generate",
    "solve",
    "solve_fractions",
    "verify",
]


def solve_fractions(n, triplets, b, **kwargs):
    """Like solve, but returns the solution as a list of Fractions."""
    rep = solve(n, triplets, b, **kwargs)
    d = rep["denominator"]
    return [Fraction(x, d) for x in rep["numerators"]]
