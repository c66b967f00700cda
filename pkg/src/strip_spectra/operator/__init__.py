"""Sparse generalized eigenproblems for the Neumann forms on the strip rectangle."""

from .assembly import DiscreteForms, assemble_eps, assemble_flat, export_triplets
from .grid import GridSpec
from .reference import (
    ReferenceEigenvalue,
    ReferenceSpectrum,
    discrete_flat_spectrum,
    reference_spectrum,
    sample_psi0,
)

__all__ = [
    "DiscreteForms",
    "assemble_eps",
    "assemble_flat",
    "export_triplets",
    "GridSpec",
    "ReferenceEigenvalue",
    "ReferenceSpectrum",
    "discrete_flat_spectrum",
    "reference_spectrum",
    "sample_psi0",
]
