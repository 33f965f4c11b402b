"""Density operators, Gibbs states, unitary evolution and spin-1/2 algebra."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matkernel as mk
from .exceptions import InvalidDensityOperator

DENSITY_TOL = 1e-10


@dataclass(frozen=True)
class DensityOperator:
    """A validated density matrix: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray
    tol: float = DENSITY_TOL

    def __post_init__(self):
        try:
            rho = mk.as_matrix(self.matrix).copy()
        except ValueError as exc:
            raise InvalidDensityOperator(str(exc)) from exc
        if mk.frobenius(rho - mk.dagger(rho)) > self.tol:
            raise InvalidDensityOperator("density matrix is not Hermitian")
        tr = np.trace(rho)
        if abs(tr - 1.0) > self.tol:
            raise InvalidDensityOperator(f"density matrix has trace {tr:.12g}, expected 1")
        lowest = np.linalg.eigvalsh(0.5 * (rho + mk.dagger(rho)))[0]
        if lowest < -self.tol:
            raise InvalidDensityOperator(f"density matrix has negative eigenvalue {lowest:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True)
class SpinOperators:
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))


@dataclass(frozen=True)
class EigenspaceFamily:
    """Weights ``lambda_k`` on mutually orthogonal projectors ``P_k`` of rank ``m_k``."""

    projectors: tuple[np.ndarray, ...]
    weights: np.ndarray
    multiplicities: tuple[int, ...] = field(default=())

    def __post_init__(self):
        projectors = tuple(mk.as_matrix(P) for P in self.projectors)
        weights = np.asarray(self.weights, dtype=float)
        if len(projectors) != len(weights):
            raise ValueError("need exactly one weight per projector")
        ranks = tuple(int(round(np.trace(P).real)) for P in projectors)
        if self.multiplicities and tuple(self.multiplicities) != ranks:
            raise ValueError(f"multiplicities {self.multiplicities} do not match ranks {ranks}")
        object.__setattr__(self, "projectors", projectors)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "multiplicities", ranks)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def __len__(self) -> int:
        return len(self.projectors)

    def is_complete(self, eps: float = 1e-10) -> bool:
        return mk.frobenius(sum(self.projectors) - np.eye(self.dim)) <= eps

    def matrix(self) -> np.ndarray:
        """``sum_k lambda_k P_k``."""
        return sum(w * P for w, P in zip(self.weights, self.projectors))

    def conjugated(self, W) -> "EigenspaceFamily":
        """Family with every projector replaced by ``W P W^dagger``."""
        Wd = mk.dagger(W)
        return EigenspaceFamily(tuple(W @ P @ Wd for P in self.projectors), self.weights)


def spin_half() -> SpinOperators:
    """Spin-1/2 operators ``sigma / 2``."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex) / 2
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
    sz = np.array([[1, 0], [0, -1]], dtype=complex) / 2
    return SpinOperators(sx, sy, sz)


def kron(A, B) -> np.ndarray:
    """Kronecker product; the first factor is the left (nuclear) tensor slot."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def thermal_state(H, beta: float) -> DensityOperator:
    """Gibbs state ``exp(-beta H) / Tr exp(-beta H)``.

    The spectrum is shifted by its minimum before exponentiating so large
    ``beta`` cannot overflow.
    """
    if not np.isfinite(beta) or beta < 0:
        raise ValueError(f"inverse temperature must be finite and >= 0, got {beta!r}")
    spec = mk.hermitian_eig(H)
    boltzmann = np.exp(-beta * (spec.eigenvalues - spec.eigenvalues[0]))
    populations = boltzmann / boltzmann.sum()
    V = spec.eigenvectors
    rho = (V * populations) @ mk.dagger(V)
    return DensityOperator(0.5 * (rho + mk.dagger(rho)))


def inverse_temperature(temperature: float) -> float:
    """``beta = 1 / T`` with Boltzmann's constant set to one."""
    if not np.isfinite(temperature) or temperature <= 0:
        raise ValueError(f"temperature must be positive and finite, got {temperature!r}")
    return 1.0 / temperature


def gibbs_state(H, temperature: float) -> DensityOperator:
    return thermal_state(H, inverse_temperature(temperature))


def evolve(rho: DensityOperator, H, t: float) -> DensityOperator:
    """Conjugate ``rho`` by the propagator ``exp(-i t H)``."""
    U = mk.unitary_exp(H, t)
    out = U @ rho.matrix @ mk.dagger(U)
    return DensityOperator(0.5 * (out + mk.dagger(out)), rho.tol)


def mixedness(rho: DensityOperator) -> float:
    """Linear entropy ``1 - Tr(rho^2)``."""
    M = rho.matrix
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(1.0 - np.sum(np.abs(M) ** 2))


def decompose_density(rho: DensityOperator, cluster_tol: float | None = None) -> EigenspaceFamily:
    """Group the spectrum of ``rho`` into degenerate eigenspaces."""
    spec = mk.hermitian_eig(rho.matrix, cluster_tol)
    return EigenspaceFamily(tuple(spec.projectors()), spec.cluster_values())


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> DensityOperator:
    """Random density matrix ``G G^dagger / Tr`` from a complex Ginibre matrix."""
    rank = dim if rank is None else rank
    G = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = G @ mk.dagger(G)
    return DensityOperator(rho / np.trace(rho).real)


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (A + mk.dagger(A))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    Z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))

