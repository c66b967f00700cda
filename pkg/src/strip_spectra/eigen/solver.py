"""Smallest eigenpairs of the pencil A v = lambda M v by shift-invert Lanczos."""

import logging
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, SuperLU, eigsh, splu

from ..errors import (
    DegeneracyWarning,
    DegenerateAlignment,
    FactorizationFailure,
    NoConvergence,
)
from ..operator.assembly import DiscreteForms

logger = logging.getLogger(__name__)

MAX_COUNT = 12
DEFAULT_SHIFT = -1.0
DEGENERACY_GAP = 1e-8
ALIGNMENT_FLOOR = 1e-8
# Below this many unknowns the pencil is solved densely.
DENSE_LIMIT = 64


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue and M-normalized eigenvector (flattened grid function)."""

    index: int
    value: float
    vector: np.ndarray
    residual: float
    degenerate: bool = False


def factorize(matrix: sparse.spmatrix, label: str) -> SuperLU:
    """Sparse LU of ``matrix``; a failure means the assembly is broken."""
    try:
        return splu(sparse.csc_matrix(matrix))
    except (RuntimeError, ValueError) as exc:
        raise FactorizationFailure(f"could not factorize {label}: {exc}") from exc


def residual(forms: DiscreteForms, value: float, vector: np.ndarray) -> float:
    mv = forms.mass @ vector
    return float(np.linalg.norm(forms.stiffness @ vector - value * mv) / np.linalg.norm(mv))


def _dense_pencil(forms: DiscreteForms, count: int) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = linalg.eigh(forms.stiffness.toarray(), forms.mass.toarray())
    return values[:count], vectors[:, :count]


def solve_smallest(
    forms: DiscreteForms,
    count: int,
    tol: float = 1e-8,
    shift: float = DEFAULT_SHIFT,
    max_iter: int = 500,
    seed: int = 42,
    warn_degenerate: bool = True,
) -> list[EigenPair]:
    """The ``count`` smallest eigenpairs, values ascending, vectors M-orthonormal.

    Near-equal neighbours are flagged ``degenerate``; a ``DegeneracyWarning`` is
    issued as well unless ``warn_degenerate`` is false.

    Raises:
        ValueError: count or tol out of range.
        FactorizationFailure: ``A - shift M`` could not be factorized.
        NoConvergence: Lanczos hit ``max_iter`` or a residual exceeds ``tol``.
    """
    if not 1 <= count <= MAX_COUNT:
        raise ValueError(f"count must be in [1, {MAX_COUNT}], got {count}")
    if not 1e-12 <= tol <= 1e-6:
        raise ValueError(f"tol must be in [1e-12, 1e-6], got {tol}")

    size = forms.grid.size
    if size <= DENSE_LIMIT or count >= size - 1:
        values, vectors = _dense_pencil(forms, count)
    else:
        lu = factorize(forms.stiffness - shift * forms.mass, "A - sigma M")
        op_inv = LinearOperator(shape=(size, size), matvec=lu.solve, dtype=float)
        v0 = np.random.default_rng(seed).standard_normal(size)
        try:
            values, vectors = eigsh(
                forms.stiffness,
                k=count,
                M=forms.mass,
                sigma=shift,
                OPinv=op_inv,
                which="LM",
                v0=v0,
                tol=0.0,
                maxiter=max_iter,
            )
        except ArpackNoConvergence as exc:
            raise NoConvergence(
                f"Lanczos did not converge for {count} eigenpairs within {max_iter} iterations"
            ) from exc

    order = np.argsort(values)
    values, vectors = values[order], vectors[:, order]

    pairs = []
    for k in range(count):
        v = vectors[:, k]
        v = v / np.sqrt(forms.inner(v, v))
        lam = float(values[k])
        res = residual(forms, lam, v)
        if res > tol:
            raise NoConvergence(f"eigenpair {k + 1} has residual {res:.3e} > tol {tol:.1e}")
        pairs.append(EigenPair(index=k + 1, value=lam, vector=v, residual=res))

    for k in range(count - 1):
        lo, hi = pairs[k].value, pairs[k + 1].value
        if abs(hi - lo) < DEGENERACY_GAP * max(abs(lo), abs(hi), 1e-300):
            if warn_degenerate:
                warnings.warn(
                    f"eigenvalues {k + 1} and {k + 2} are degenerate ({lo:.12g})",
                    DegeneracyWarning,
                    stacklevel=2,
                )
            pairs[k] = replace(pairs[k], degenerate=True)
            pairs[k + 1] = replace(pairs[k + 1], degenerate=True)

    logger.debug(
        "Smallest %d eigenvalues on %dx%d grid: %s",
        count, forms.grid.n_s, forms.grid.n_t, [f"{p.value:.10g}" for p in pairs],
    )
    return pairs


def align_sign(pair: EigenPair, reference: np.ndarray, mass: sparse.spmatrix) -> EigenPair:
    """Flip ``pair`` so its M-inner product with ``reference`` is positive.

    Raises DegenerateAlignment when the normalized inner product is below 1e-8.
    """
    ref = np.ravel(reference)
    if not np.any(ref):
        raise ValueError("sign reference must be nonzero")
    v = pair.vector
    ip = float(v @ (mass @ ref))
    scale = np.sqrt(float(v @ (mass @ v)) * float(ref @ (mass @ ref)))
    if abs(ip) < ALIGNMENT_FLOOR * scale:
        raise DegenerateAlignment(
            f"eigenvector {pair.index} is orthogonal to its reference "
            f"(normalized inner product {ip / scale:.2e})"
        )
    if ip < 0.0:
        return replace(pair, vector=-v)
    return pair
