"""Exceptions and warnings raised across the package.

Every error carries the name of the module it originated from so the CLI can
report provenance alongside the message.
"""


class StripSpectraError(Exception):
    """Base class for all package errors."""

    module = "strip_spectra"

    def __init__(self, message: str, *, module: str | None = None) -> None:
        super().__init__(message)
        if module is not None:
            self.module = module


class ConfigError(StripSpectraError):
    """Run configuration could not be parsed or validated."""

    module = "cli"

    def __init__(self, message: str, diagnostics: list[str] | None = None) -> None:
        super().__init__(message, module="cli")
        self.diagnostics = diagnostics or []


class NonPositiveJacobian(StripSpectraError):
    """f_eps reached zero or below: the strip is not a local diffeomorphism."""

    module = "geometry"


class EvaluationFailure(StripSpectraError):
    """Curvature or Gauss curvature could not be evaluated at a node."""

    module = "geometry"


class PreconditionViolated(StripSpectraError):
    """An operation was called outside its domain of validity."""

    module = "geometry"


class InsufficientData(StripSpectraError):
    """Too few samples for a rate fit."""

    module = "analysis"


class FactorizationFailure(StripSpectraError):
    """Sparse factorization of a shifted pencil failed."""

    module = "eigen"


class NoConvergence(StripSpectraError):
    """An iterative method hit its iteration cap."""

    module = "eigen"


class DegenerateAlignment(StripSpectraError):
    """Eigenvector is nearly orthogonal to its sign reference."""

    module = "eigen"


class DegenerateRange(StripSpectraError):
    """Grid function is constant, so extrema are not defined."""

    module = "analysis"


class DegeneracyWarning(UserWarning):
    """Two computed eigenvalues are numerically indistinguishable."""


class DiscretizationFloor(UserWarning):
    """Sweep errors stagnated at the smallest widths; refine the grid."""
