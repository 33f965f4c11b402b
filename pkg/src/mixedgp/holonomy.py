"""Parallel transport and mixed-state geometric phases.

A density operator ``rho = sum_k lambda_k P_k`` evolving under ``U(t)`` is
parallel transported by ``U(t) V(t)`` where ``V = sum_k alpha_k`` and each
block ``alpha_k`` undoes the dynamical phase accumulated inside the
eigenspace ``P_k``. The (off-)diagonal phase factors are then the
normalised traces of products of ``U V_j rho_j^(1/l)`` over a family of
mutually orthogonal density operators obtained by cyclically permuting a
reference basis.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import matkernel as mk
from .exceptions import (
    IndexOutOfRange,
    NodalPoint,
    NonAntiHermitianGenerator,
    NotOrthonormal,
    StepCountTooSmall,
)
from .quantum import DensityOperator, EigenspaceFamily, decompose_density

DEFAULT_NODAL_TOL = 1e-12
PROJECTOR_TOL = 1e-9
FORMS = ("product", "sum")


@dataclass(frozen=True)
class PhaseFactor:
    """Unit-modulus phase factor ``z / |z|``.

    ``magnitude_raw`` keeps ``|z|``, which plays the role of an interference
    visibility and tells how far the point is from being nodal.
    """

    factor: complex
    argument: float
    magnitude_raw: float

    @property
    def real(self) -> float:
        return self.factor.real

    @property
    def imag(self) -> float:
        return self.factor.imag


def phase_of(z: complex, nodal_tol: float = DEFAULT_NODAL_TOL) -> PhaseFactor:
    """Normalise ``z`` to a phase factor; raise :class:`NodalPoint` if ``|z| < nodal_tol``."""
    z = complex(z)
    magnitude = abs(z)
    if not magnitude >= nodal_tol:
        raise NodalPoint(f"|z| = {magnitude:.3e} is below the nodal tolerance {nodal_tol:g}", magnitude)
    factor = z / magnitude
    argument = cmath.phase(factor)
    if argument <= -math.pi:
        argument = math.pi
    return PhaseFactor(factor, argument, magnitude)


def _check_projector(P) -> np.ndarray:
    P = mk.as_matrix(P)
    if not mk.is_projector(P, PROJECTOR_TOL):
        raise ValueError("expected an orthogonal projector (P^2 = P = P^dagger)")
    return P


def transport_block_closed(P, H, t: float) -> np.ndarray:
    """Parallel-transport block ``P exp(+i t P H P) P`` for a constant Hamiltonian."""
    P = _check_projector(P)
    K = P @ mk.as_matrix(H) @ P
    E = mk.spectral_function(K, lambda w: np.exp(1j * t * w))
    return P @ E @ P


def hamiltonian_generator(H) -> Callable[[float], np.ndarray]:
    """``U^dagger dU/dt = -i H`` for ``U(t) = exp(-i t H)``."""
    G = -1j * mk.as_matrix(H)
    return lambda t: G


def transport_block_ordered(
    P, generator: Callable[[float], np.ndarray], t: float, steps: int
) -> np.ndarray:
    """Time-ordered parallel-transport block.

    Approximates ``P T exp(-int_0^t P G(s) P ds) P`` by a product of
    ``steps`` sub-interval exponentials, each sampling the anti-Hermitian
    generator ``G = U^dagger dU/dt`` at the sub-interval midpoint. Later times
    multiply from the left. The scheme is exact when ``G`` is constant.
    """
    if int(steps) != steps or steps < 1:
        raise StepCountTooSmall(f"need at least one step, got {steps!r}")
    P = _check_projector(P)
    dt = t / steps
    out = np.eye(P.shape[0], dtype=complex)
    for k in range(int(steps)):
        G = mk.as_matrix(generator((k + 0.5) * dt))
        if mk.frobenius(G + mk.dagger(G)) > 1e-8 * max(1.0, mk.frobenius(G)):
            raise NonAntiHermitianGenerator(f"generator at t = {(k + 0.5) * dt:g} is not anti-Hermitian")
        # exp(-dt P G P) with -dt P G P = i K, K Hermitian
        K = 1j * dt * (P @ G @ P)
        step = mk.spectral_function(0.5 * (K + mk.dagger(K)), lambda w: np.exp(1j * w))
        out = step @ out
    return P @ out @ P


@dataclass(frozen=True)
class TransportSpec:
    """Inputs for a supplementary operator ``V = sum_k alpha_k``.

    Either ``hamiltonian`` (constant) or ``generator`` must be given. With a
    generator, or when ``steps`` is set, the time-ordered product is used;
    otherwise the closed form.
    """

    projectors: Sequence[np.ndarray]
    duration: float
    hamiltonian: np.ndarray | None = None
    generator: Callable[[float], np.ndarray] | None = None
    steps: int | None = None

    def __post_init__(self):
        if self.hamiltonian is None and self.generator is None:
            raise ValueError("TransportSpec needs a hamiltonian or a generator")
        if not self.duration >= 0:
            raise ValueError(f"duration must be >= 0, got {self.duration!r}")
        if self.generator is not None and self.steps is None:
            raise StepCountTooSmall("time-ordered transport needs a step count")
        if self.steps is not None and (int(self.steps) != self.steps or self.steps < 1):
            raise StepCountTooSmall(f"need at least one step, got {self.steps!r}")
        projectors = tuple(mk.as_matrix(P) for P in self.projectors)
        for i, Pi in enumerate(projectors):
            for Pj in projectors[i + 1:]:
                if mk.frobenius(Pi @ Pj) > PROJECTOR_TOL:
                    raise ValueError("transport projectors are not mutually orthogonal")
        object.__setattr__(self, "projectors", projectors)


def transport_block(spec: TransportSpec, P) -> np.ndarray:
    if spec.steps is None:
        return transport_block_closed(P, spec.hamiltonian, spec.duration)
    generator = spec.generator or hamiltonian_generator(spec.hamiltonian)
    return transport_block_ordered(P, generator, spec.duration, spec.steps)


def supplementary_operator(spec: TransportSpec) -> np.ndarray:
    """``V = sum_k alpha_k``; unitary whenever the projectors resolve the identity."""
    return sum(transport_block(spec, P) for P in spec.projectors)


def transport_condition_residual(projectors, H, t: float, h: float) -> float:
    """Largest ``|P_k U_par^dagger dU_par/dt P_k|_F`` at time ``t``.

    ``U_par(t) = exp(-i t H) V(t)`` and the derivative is a central difference
    with step ``h``. Zero for exact parallel transport.
    """
    def U_par(s):
        return mk.unitary_exp(H, s) @ sum(transport_block_closed(P, H, s) for P in projectors)

    derivative = (U_par(t + h) - U_par(t - h)) / (2 * h)
    connection = mk.dagger(U_par(t)) @ derivative
    return max(mk.frobenius(P @ connection @ P) for P in projectors)


def permutation_unitary(basis) -> np.ndarray:
    """Cyclic shift ``psi_1 -> psi_2 -> ... -> psi_N -> psi_1`` on column vectors.

    When the ``N`` columns do not span the whole space the shift acts as the
    identity on the orthogonal complement, so the result is always unitary
    and ``W^N = 1``.
    """
    B = np.asarray(basis, dtype=complex)
    if B.ndim != 2 or B.shape[1] < 1 or B.shape[1] > B.shape[0]:
        raise ValueError(f"expected a (dim, N) array of basis columns, got shape {B.shape}")
    N = B.shape[1]
    if mk.frobenius(mk.dagger(B) @ B - np.eye(N)) > mk.ORTHONORMAL_TOL:
        raise NotOrthonormal("basis vectors are not orthonormal")
    shifted = np.roll(B, -1, axis=1)
    return np.eye(B.shape[0]) - B @ mk.dagger(B) + shifted @ mk.dagger(B)


class FamilyMember(NamedTuple):
    rho: DensityOperator
    eigenspaces: EigenspaceFamily


def noninterfering_family(
    base: EigenspaceFamily, basis, N: int | None = None
) -> list[FamilyMember]:
    """Density operators ``rho_n = sum_k lambda_k W^(n-1) P_k W^-(n-1)``, ``n = 1..N``."""
    W = permutation_unitary(basis)
    size = np.asarray(basis).shape[1]
    N = size if N is None else N
    if not 1 <= N <= size:
        raise ValueError(f"family size must be between 1 and {size}, got {N}")
    members = []
    shift = np.eye(W.shape[0], dtype=complex)
    for _ in range(N):
        eigenspaces = base.conjugated(shift)
        rho = eigenspaces.matrix()
        members.append(FamilyMember(DensityOperator(0.5 * (rho + mk.dagger(rho))), eigenspaces))
        shift = W @ shift
    return members


def diagonal_gp(
    rho: DensityOperator,
    H,
    tau: float,
    cluster_tol: float | None = None,
    nodal_tol: float = DEFAULT_NODAL_TOL,
    steps: int | None = None,
) -> PhaseFactor:
    """Mixed-state geometric phase ``Phi[Tr(U(tau) V(tau) rho)]``.

    The transport blocks are built on the eigenprojectors of ``rho``.
    """
    eigenspaces = decompose_density(rho, cluster_tol)
    V = supplementary_operator(TransportSpec(eigenspaces.projectors, tau, hamiltonian=H, steps=steps))
    U = mk.unitary_exp(H, tau)
    return phase_of(np.trace(U @ V @ rho.matrix), nodal_tol)


def off_diagonal_gp(
    family: Sequence[FamilyMember],
    indices: Sequence[int],
    H,
    tau: float,
    form: str = "product",
    nodal_tol: float = DEFAULT_NODAL_TOL,
    clamp_tol: float = mk.DEFAULT_CLAMP_TOL,
    steps: int | None = None,
) -> PhaseFactor:
    """Order-``l`` off-diagonal phase over the family members ``indices`` (1-based).

    Each member contributes ``U(tau) V_j(tau) rho_j^(1/l)``. ``form="product"``
    multiplies the factors in the given order before tracing;
    ``form="sum"`` traces their sum instead. Both agree for ``l = 1``.
    """
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    indices = [int(j) for j in indices]
    if not indices:
        raise ValueError("need at least one family index")
    if len(set(indices)) != len(indices):
        raise ValueError(f"family indices must be distinct, got {indices}")
    for j in indices:
        if not 1 <= j <= len(family):
            raise IndexOutOfRange(f"family index {j} outside 1..{len(family)}")
    l = len(indices)
    U = mk.unitary_exp(H, tau)
    factors = []
    for j in indices:
        member = family[j - 1]
        spec = TransportSpec(member.eigenspaces.projectors, tau, hamiltonian=H, steps=steps)
        root = member.rho.matrix if l == 1 else mk.psd_root(member.rho.matrix, l, clamp_tol)
        factors.append(U @ supplementary_operator(spec) @ root)
    if form == "product":
        M = factors[0]
        for F in factors[1:]:
            M = M @ F
    else:
        M = sum(factors)
    return phase_of(np.trace(M), nodal_tol)
