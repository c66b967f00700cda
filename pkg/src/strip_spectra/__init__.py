"""Neumann Laplacian spectra on thin curved strips in Fermi coordinates."""

__version__ = "0.1.0"
