"""Straightforward re-evaluation of the hydrogen phases with scipy.

Nothing here imports the package: matrices are written out by hand and
matrix functions come from ``scipy.linalg`` (Pade ``expm``, Schur ``sqrtm``)
so the comparison exercises a different numerical path end to end.
"""
import numpy as np
from scipy import linalg

S = 1 / np.sqrt(2)
KETS = [
    np.array([1, 0, 0, 0], dtype=complex),
    np.array([0, S, S, 0], dtype=complex),
    np.array([0, 0, 0, 1], dtype=complex),
    np.array([0, S, -S, 0], dtype=complex),
]


def hamiltonian(J, C, D=0.0):
    # I.S in the |00>,|01>,|10>,|11> basis, plus C S_z(electron) + D I_z(nucleus)
    H0 = J * np.array(
        [[0.25, 0, 0, 0], [0, -0.25, 0.5, 0], [0, 0.5, -0.25, 0], [0, 0, 0, 0.25]], dtype=complex
    )
    HI = np.diag([C / 2 + D / 2, -C / 2 + D / 2, C / 2 - D / 2, -C / 2 - D / 2]).astype(complex)
    return H0, H0 + HI


def shift_operator(kets):
    N = len(kets)
    W = np.outer(kets[0], kets[N - 1].conj())
    for i in range(1, N):
        W = W + np.outer(kets[i], kets[i - 1].conj())
    return W


def hydrogen_family(J, T):
    H0, _ = hamiltonian(J, 0.0)
    E = linalg.expm(-H0 / T)
    rho1 = E / np.trace(E)
    P_trip = sum(np.outer(k, k.conj()) for k in KETS[:3])
    P_sing = np.outer(KETS[3], KETS[3].conj())
    W = shift_operator(KETS)
    members = []
    Wn = np.eye(4, dtype=complex)
    for _ in range(4):
        members.append((Wn @ rho1 @ Wn.conj().T, [Wn @ P @ Wn.conj().T for P in (P_trip, P_sing)]))
        Wn = W @ Wn
    return members


def transport(projectors, H, tau):
    return sum(P @ linalg.expm(1j * tau * (P @ H @ P)) @ P for P in projectors)


def phase(J, C, T, indices=(1, 2), form="product"):
    """Normalised trace for the order-``len(indices)`` phase; returns ``(z/|z|, |z|)``."""
    _, H = hamiltonian(J, C)
    tau = 2 * np.pi / np.sqrt(C**2 + J**2)
    U = linalg.expm(-1j * tau * H)
    family = hydrogen_family(J, T)
    l = len(indices)
    factors = []
    for j in indices:
        rho, projectors = family[j - 1]
        root = rho if l == 1 else (linalg.sqrtm(rho) if l == 2 else linalg.fractional_matrix_power(rho, 1 / l))
        factors.append(U @ transport(projectors, H, tau) @ root)
    if form == "product":
        M = np.linalg.multi_dot(factors) if l > 1 else factors[0]
    else:
        M = sum(factors)
    z = np.trace(M)
    return z / abs(z), abs(z)
