"""Dense linear algebra helpers with deterministic conventions.

Thin wrappers around LAPACK (via numpy) plus a modified Gram-Schmidt that
reports dropped directions. All routines validate their inputs and raise
errors from the shared taxonomy instead of letting numpy exceptions leak
to callers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DataError,
    DegenerateInputError,
    NumericalError,
    ParameterError,
)

__all__ = [
    "SvdTriple",
    "Spectrum",
    "thin_svd",
    "pseudo_inverse",
    "eigen_nonsymmetric",
    "gram_schmidt",
]


@dataclass(frozen=True)
class SvdTriple:
    """Rank-truncated singular value decomposition ``a ~ u @ diag(sigma) @ v.T``.

    ``u`` has shape (rows, rank), ``sigma`` shape (rank,) nonincreasing,
    ``v`` shape (cols, rank) with orthonormal columns.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    rank: int


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by (imaginary, real) part, with matched eigenvectors.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]`` and has unit norm.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, name="matrix"):
    """Coerce to a finite, nonempty 2-d float array or raise."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ParameterError(f"{name} must be 2-d, got ndim={a.ndim}")
    if a.size == 0:
        raise ParameterError(f"{name} must be nonempty, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DataError(f"{name} contains non-finite entries")
    return a


def thin_svd(a, rank: int) -> SvdTriple:
    """Rank-truncated SVD with a deterministic sign convention.

    Each singular pair is flipped so the largest-magnitude entry of its
    left vector is positive. This pins the decomposition itself, not just
    the subspaces, so repeated runs agree entry for entry.
    """
    a = as_matrix(a)
    kmax = min(a.shape)
    if not isinstance(rank, (int, np.integer)) or isinstance(rank, bool):
        raise ParameterError(f"rank must be an integer, got {rank!r}")
    if not 1 <= rank <= kmax:
        raise ParameterError(
            f"rank must be in [1, {kmax}] for shape {a.shape}, got {rank}"
        )
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    u = u[:, :rank].copy()
    s = s[:rank].copy()
    vt = vt[:rank].copy()
    for j in range(rank):
        k = int(np.argmax(np.abs(u[:, j])))
        if u[k, j] < 0.0:
            u[:, j] = -u[:, j]
            vt[j] = -vt[j]
    return SvdTriple(u=u, sigma=s, v=vt.T.copy(), rank=int(rank))


def pseudo_inverse(a, rel_tol: float = 1e-12) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values below ``rel_tol * sigma_1`` are treated as zero, so a
    zero matrix maps to the (transposed-shape) zero matrix rather than
    raising.
    """
    a = as_matrix(a)
    if not rel_tol > 0.0:
        raise ParameterError(f"rel_tol must be positive, got {rel_tol}")
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    cutoff = rel_tol * s[0] if s[0] > 0.0 else 0.0
    inv = np.zeros_like(s)
    keep = s > cutoff
    inv[keep] = 1.0 / s[keep]
    return (vt.T * inv) @ u.T


def eigen_nonsymmetric(a) -> Spectrum:
    """Eigendecomposition of a real square matrix, deterministically ordered.

    Eigenvalues are sorted by ascending imaginary part, ties broken by
    ascending real part, so conjugate pairs appear as (-i*w, ..., +i*w).
    Eigenvectors are returned unit-norm in matching column order.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ParameterError(f"matrix must be square, got shape {a.shape}")
    try:
        w, vecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition did not converge: {exc}") from exc
    order = np.lexsort((w.real, w.imag))
    w = w[order]
    vecs = vecs[:, order]
    norms = np.linalg.norm(vecs, axis=0)
    vecs = vecs / norms
    return Spectrum(eigenvalues=w, eigenvectors=vecs)


def gram_schmidt(vectors, drop_tol: float = 1e-12):
    """Modified Gram-Schmidt with explicit reporting of dropped inputs.

    Parameters
    ----------
    vectors : sequence of 1-d arrays, or a 2-d array of row vectors.
    drop_tol : vectors whose residual after projection falls below
        ``drop_tol`` times their input norm are dropped, not normalized.

    Returns
    -------
    (basis, dropped) : list of orthonormal 1-d arrays in input order, and
        a tuple of the input indices that were dropped.

    Raises
    ------
    DegenerateInputError
        If an input vector is exactly zero; the message names its index.
    """
    if not drop_tol > 0.0:
        raise ParameterError(f"drop_tol must be positive, got {drop_tol}")
    arr = [np.asarray(v, dtype=float) for v in vectors]
    if not arr:
        raise ParameterError("gram_schmidt needs at least one vector")
    dim = arr[0].shape
    for i, v in enumerate(arr):
        if v.ndim != 1:
            raise ParameterError(f"vector {i} must be 1-d, got ndim={v.ndim}")
        if v.shape != dim:
            raise ParameterError(
                f"vector {i} has length {v.shape[0]}, expected {dim[0]}"
            )
        if not np.all(np.isfinite(v)):
            raise DataError(f"vector {i} contains non-finite entries")
    basis: list[np.ndarray] = []
    dropped: list[int] = []
    for i, v in enumerate(arr):
        norm_in = float(np.linalg.norm(v))
        if norm_in == 0.0:
            raise DegenerateInputError(f"input vector {i} is zero")
        w = v.copy()
        for q in basis:
            w -= (q @ w) * q
        norm_out = float(np.linalg.norm(w))
        if norm_out < drop_tol * norm_in:
            dropped.append(i)
            continue
        basis.append(w / norm_out)
    return basis, tuple(dropped)
