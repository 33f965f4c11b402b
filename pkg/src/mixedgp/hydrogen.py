"""Hydrogen ground-state hyperfine model in a static magnetic field.

Two spin-1/2 particles, nucleus first and electron second, in the product
basis ``|00>, |01>, |10>, |11>``. Units have hbar = k_B = 1 and the field
enters only through the energy scales ``C`` (electron Zeeman) and ``D``
(nuclear Zeeman, negligible for hydrogen and zero by default).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import holonomy
from . import matkernel as mk
from .exceptions import DegenerateParameters
from .quantum import DensityOperator, decompose_density, gibbs_state, kron, spin_half

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class ModelParams:
    J: float
    C: float
    T: float
    D: float = 0.0
    n: int = 1

    def __post_init__(self):
        for name in ("J", "C", "D", "T"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.T <= 0:
            raise ValueError(f"temperature must be positive, got {self.T!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"cycle index must be a positive integer, got {self.n!r}")


def hyperfine_hamiltonian(J: float) -> np.ndarray:
    """``J (I_x S_x + I_y S_y + I_z S_z)``."""
    spins = spin_half()
    return J * sum(kron(s, s) for s in spins)


def zeeman_term(C: float, D: float = 0.0) -> np.ndarray:
    """``C (1 x S_z) + D (I_z x 1)``."""
    sz = spin_half().sz
    return C * kron(_I2, sz) + D * kron(sz, _I2)


def total_hamiltonian(params: ModelParams) -> np.ndarray:
    return hyperfine_hamiltonian(params.J) + zeeman_term(params.C, params.D)


def canonical_eigenbasis() -> np.ndarray:
    """Triplet ``|00>, (|01>+|10>)/sqrt2, |11>`` then singlet ``(|01>-|10>)/sqrt2``, as columns."""
    s = 1 / math.sqrt(2)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, s, 0, s],
            [0, s, 0, -s],
            [0, 0, 1, 0],
        ],
        dtype=complex,
    )


def canonical_projectors() -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the triplet and singlet subspaces."""
    phi = canonical_eigenbasis()
    return mk.projector_from_columns(phi[:, :3]), mk.projector_from_columns(phi[:, 3])


def period(params: ModelParams) -> float:
    """Recurrence time ``2 n pi / sqrt(C^2 + J^2)`` of the thermal state (valid for ``D = 0``)."""
    omega = math.hypot(params.C, params.J)
    if omega == 0:
        raise DegenerateParameters("C = J = 0: the state never evolves, no period exists")
    return 2 * params.n * math.pi / omega


def mixedness_closed_form(J: float, T: float) -> float:
    """``6 (1 + e^(J/T)) / (3 + e^(J/T))^2``, evaluated without overflow."""
    if not T > 0:
        raise ValueError(f"temperature must be positive, got {T!r}")
    x = J / T
    if x > 0:
        # multiply through by e^(-2x); tends to 6 e^(-x) for large x
        y = math.exp(-x)
        return 6 * (y * y + y) / (3 * y + 1) ** 2
    e = math.exp(x)
    return 6 * (1 + e) / (3 + e) ** 2


def initial_state(params: ModelParams) -> DensityOperator:
    """Zero-field Gibbs state at temperature ``T``."""
    return gibbs_state(hyperfine_hamiltonian(params.J), params.T)


def geometric_phase(
    params: ModelParams,
    indices: Sequence[int] = (1,),
    form: str = "product",
    cluster_tol: float | None = None,
    nodal_tol: float = holonomy.DEFAULT_NODAL_TOL,
    steps: int | None = None,
) -> holonomy.PhaseFactor:
    """Geometric phase after one recurrence period.

    ``indices=(1,)`` gives the ordinary mixed-state phase of the initial
    Gibbs state; longer index tuples give off-diagonal phases over the
    family generated by cyclically shifting the canonical eigenbasis.
    """
    H = total_hamiltonian(params)
    tau = period(params)
    rho = initial_state(params)
    if tuple(indices) == (1,):
        return holonomy.diagonal_gp(rho, H, tau, cluster_tol, nodal_tol, steps)
    base = decompose_density(rho, cluster_tol)
    family = holonomy.noninterfering_family(base, canonical_eigenbasis())
    return holonomy.off_diagonal_gp(family, indices, H, tau, form, nodal_tol, steps=steps)
