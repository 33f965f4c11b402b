"""Dense complex-matrix helpers and Hermitian spectral calculus.

Everything here works on plain ``numpy`` arrays of shape ``(d, d)``. Matrix
functions are evaluated through the eigendecomposition, which is exact up to
roundoff for the small Hermitian matrices this package deals with.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exceptions import (
    DomainError,
    NoConvergence,
    NotHermitian,
    NotOrthonormal,
    NotPSD,
)

HERMITIAN_TOL = 1e-10
ORTHONORMAL_TOL = 1e-8
DEFAULT_CLAMP_TOL = 1e-12


def as_matrix(M) -> np.ndarray:
    """Return ``M`` as a finite, square, complex 2-D array."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def dagger(M) -> np.ndarray:
    return np.conj(np.transpose(M))


def commutator(A, B) -> np.ndarray:
    return A @ B - B @ A


def frobenius(M) -> float:
    return float(np.linalg.norm(M))


def _scale(M) -> float:
    return max(1.0, frobenius(M))


def is_hermitian(M, eps: float = HERMITIAN_TOL) -> bool:
    M = as_matrix(M)
    return frobenius(M - dagger(M)) <= eps * _scale(M)


def is_unitary(M, eps: float = HERMITIAN_TOL) -> bool:
    M = as_matrix(M)
    return frobenius(dagger(M) @ M - np.eye(M.shape[0])) <= eps


def is_projector(P, eps: float = HERMITIAN_TOL) -> bool:
    P = as_matrix(P)
    return frobenius(P @ P - P) <= eps and frobenius(P - dagger(P)) <= eps


def default_cluster_tol(eigenvalues) -> float:
    top = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return 1e-9 * max(1.0, top)


def cluster_indices(eigenvalues: Sequence[float], tol: float) -> tuple[tuple[int, ...], ...]:
    """Group ascending eigenvalues whose neighbours lie within ``tol``.

    Chaining is transitive: ``a ~ b`` and ``b ~ c`` puts all three together.
    """
    if tol <= 0:
        raise ValueError("cluster tolerance must be positive")
    clusters: list[list[int]] = []
    for i, value in enumerate(eigenvalues):
        if clusters and value - eigenvalues[i - 1] <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return tuple(tuple(c) for c in clusters)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigen-decomposition ``M = V diag(w) V^dagger`` with degenerate groups.

    Attributes
    ----------
    eigenvalues : ndarray
        Real eigenvalues in ascending order.
    eigenvectors : ndarray
        Orthonormal eigenvectors stored as columns.
    clusters : tuple of tuple of int
        Partition of the eigenvalue indices into (near-)degenerate groups.
    cluster_tol : float
        Tolerance used to build ``clusters``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    clusters: tuple[tuple[int, ...], ...]
    cluster_tol: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def cluster_values(self) -> np.ndarray:
        """Mean eigenvalue of each cluster."""
        return np.array([self.eigenvalues[list(c)].mean() for c in self.clusters])

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clusters)

    def projectors(self) -> list[np.ndarray]:
        """Orthogonal projector onto each cluster's eigenspace."""
        return [projector_from_columns(self.eigenvectors[:, list(c)]) for c in self.clusters]

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ dagger(V)


def hermitian_eig(M, cluster_tol: float | None = None) -> SpectralDecomposition:
    """Diagonalise a Hermitian matrix and group degenerate eigenvalues.

    Parameters
    ----------
    M : array_like
        Hermitian matrix (checked to ``1e-10`` relative to its norm).
    cluster_tol : float, optional
        Eigenvalues closer than this are chained into one cluster. Defaults
        to ``1e-9 * max(1, max|lambda|)``.

    Raises
    ------
    NotHermitian
        If ``M`` is not Hermitian.
    NoConvergence
        If LAPACK fails to converge.
    """
    M = as_matrix(M)
    if not is_hermitian(M):
        raise NotHermitian(
            f"matrix is not Hermitian: |M - M^dagger|_F = {frobenius(M - dagger(M)):.3e}"
        )
    try:
        w, V = np.linalg.eigh(0.5 * (M + dagger(M)))
    except np.linalg.LinAlgError as exc:
        # LAPACK reports the number of off-diagonal elements that failed to converge.
        raise NoConvergence(f"Hermitian eigensolver failed: {exc}", iterations=None) from exc
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(w)
    return SpectralDecomposition(w, V, cluster_indices(w, cluster_tol), float(cluster_tol))


def spectral_function(
    M, f: Callable[[np.ndarray], np.ndarray], cluster_tol: float | None = None
) -> np.ndarray:
    """Evaluate ``f(M) = sum_i f(lambda_i) v_i v_i^dagger`` for Hermitian ``M``.

    ``f`` receives the array of eigenvalues and must return an array of the
    same length. Non-finite outputs raise :class:`DomainError`.
    """
    spec = hermitian_eig(M, cluster_tol)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(spec.eigenvalues), dtype=complex)
    if fw.shape != spec.eigenvalues.shape:
        raise ValueError("spectral map must return one value per eigenvalue")
    if not np.all(np.isfinite(fw)):
        bad = spec.eigenvalues[~np.isfinite(fw)]
        raise DomainError(f"function undefined at eigenvalue(s) {bad}")
    V = spec.eigenvectors
    return (V * fw) @ dagger(V)


def unitary_exp(H, t: float) -> np.ndarray:
    """Propagator ``exp(-i t H)``."""
    return spectral_function(H, lambda w: np.exp(-1j * t * w))


def psd_root(M, l: int, clamp_tol: float = DEFAULT_CLAMP_TOL) -> np.ndarray:
    """Principal ``l``-th root of a positive semidefinite matrix.

    Eigenvalues in ``[-clamp_tol, 0)`` are treated as roundoff and set to zero.
    """
    if int(l) != l or l < 1:
        raise ValueError(f"root order must be a positive integer, got {l!r}")
    spec = hermitian_eig(M)
    w = spec.eigenvalues
    if np.any(w < -clamp_tol):
        raise NotPSD(f"matrix has negative eigenvalue {w.min():.3e} below -{clamp_tol:g}")
    root = np.clip(w, 0.0, None) ** (1.0 / l)
    V = spec.eigenvectors
    return (V * root) @ dagger(V)


def projector_from_columns(vectors) -> np.ndarray:
    """Orthogonal projector ``sum_j v_j v_j^dagger`` onto orthonormal columns."""
    V = np.asarray(vectors, dtype=complex)
    if V.ndim == 1:
        V = V[:, None]
    if V.ndim != 2 or V.shape[1] == 0:
        raise ValueError(f"expected a (dim, k) array of column vectors, got shape {V.shape}")
    gram = dagger(V) @ V
    if frobenius(gram - np.eye(V.shape[1])) > ORTHONORMAL_TOL:
        raise NotOrthonormal("columns are not orthonormal")
    return V @ dagger(V)
