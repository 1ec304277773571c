"""
Small dense complex linear algebra.

Every function accepts a single matrix of shape ``(rows, cols)`` or a stack
of matrices with arbitrary leading batch dimensions ``(..., rows, cols)``.
The Monte Carlo engine relies on the batched form: one call factors the
Gram matrices of thousands of channel realizations at once.

Hermitian positive-definite systems are solved with a column-oriented
Cholesky factorization whose loops run over the (small) matrix dimension
while the arithmetic is vectorized over the batch.
"""

import numpy as np

#: Relative pivot threshold below which a matrix is declared singular.
PIVOT_RTOL = 1e-12


class DimensionError(ValueError):
    """Raised when matrix shapes are not conformable."""


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a Cholesky pivot collapses relative to the largest diagonal entry."""


def as_matrix(a):
    """Return `a` as a complex128 array of at least two dimensions.

    Raises
    ------
    DimensionError
        If `a` has fewer than two dimensions or an empty matrix axis.
    ValueError
        If any entry is NaN or infinite.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim < 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    if a.shape[-1] < 1 or a.shape[-2] < 1:
        raise DimensionError(f"matrix dimensions must be positive, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def hermitian(a):
    """Conjugate transpose over the last two axes."""
    a = np.asarray(a)
    return np.conj(np.swapaxes(a, -1, -2))


def matmul(a, b):
    """Matrix product with an explicit conformability check."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def cholesky(a):
    """Batched Cholesky factorization ``a = L L^H`` with a pivot health mask.

    Parameters
    ----------
    a : array_like, shape (..., n, n)
        Hermitian matrices. Only the lower triangle is read.

    Returns
    -------
    L : ndarray, shape (..., n, n)
        Lower-triangular factors. Where a pivot failed it is replaced by one
        so the remaining entries stay finite; those factors are meaningless.
    ok : ndarray of bool, shape (...)
        False where some pivot fell to or below ``PIVOT_RTOL`` times the
        largest diagonal entry of the input.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[-1]
    if a.ndim < 2 or a.shape[-2] != n:
        raise DimensionError(f"expected square matrices, got {a.shape}")
    diag = np.diagonal(a, axis1=-2, axis2=-1).real
    floor = PIVOT_RTOL * np.max(np.abs(diag), axis=-1)
    L = np.zeros_like(a)
    ok = np.ones(a.shape[:-2], dtype=bool)
    for j in range(n):
        row = L[..., j, :j]
        pivot = diag[..., j] - np.sum(row.real**2 + row.imag**2, axis=-1)
        bad = pivot <= floor
        ok &= ~bad
        ljj = np.sqrt(np.where(bad, 1.0, pivot))
        L[..., j, j] = ljj
        if j + 1 < n:
            col = a[..., j + 1:, j] - np.einsum("...ik,...k->...i", L[..., j + 1:, :j], np.conj(row))
            L[..., j + 1:, j] = col / ljj[..., None]
    return L, ok


def cholesky_solve(L, b):
    """Solve ``L L^H x = b`` given lower-triangular factors from :func:`cholesky`."""
    L = np.asarray(L)
    b = np.asarray(b, dtype=np.complex128)
    n = L.shape[-1]
    if b.shape[-2] != n:
        raise DimensionError(f"right-hand side has {b.shape[-2]} rows, expected {n}")
    shape = np.broadcast_shapes(L.shape[:-2], b.shape[:-2]) + b.shape[-2:]
    y = np.empty(shape, dtype=np.complex128)
    diag = np.diagonal(L, axis1=-2, axis2=-1)
    for i in range(n):
        acc = b[..., i, :] - np.einsum("...k,...kc->...c", L[..., i, :i], y[..., :i, :])
        y[..., i, :] = acc / diag[..., i, None]
    x = y
    for i in range(n - 1, -1, -1):
        acc = y[..., i, :] - np.einsum("...k,...kc->...c", np.conj(L[..., i + 1:, i]), x[..., i + 1:, :])
        x[..., i, :] = acc / np.conj(diag[..., i, None])
    return x


def solve_hermitian_system(a, b):
    """Solve ``a x = b`` for Hermitian positive-definite `a`.

    Raises
    ------
    SingularMatrixError
        If any matrix in the batch fails the pivot test.
    """
    L, ok = cholesky(a)
    if not np.all(ok):
        raise SingularMatrixError("matrix is singular or ill-conditioned")
    return cholesky_solve(L, b)


def log_det_hermitian(a):
    """Base-2 log-determinant of Hermitian positive-definite matrices."""
    L, ok = cholesky(a)
    if not np.all(ok):
        raise SingularMatrixError("matrix is singular or ill-conditioned")
    diag = np.diagonal(L, axis1=-2, axis2=-1).real
    return 2.0 * np.sum(np.log2(diag), axis=-1)
