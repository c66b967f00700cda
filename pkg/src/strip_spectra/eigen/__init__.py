"""Sparse symmetric generalized eigensolves and the resolvent-difference estimate."""

from .resolvent import ResolventDifference, ResolventEstimate, resolvent_gap
from .solver import EigenPair, align_sign, factorize, solve_smallest

__all__ = [
    "ResolventDifference",
    "ResolventEstimate",
    "resolvent_gap",
    "EigenPair",
    "align_sign",
    "factorize",
    "solve_smallest",
]
