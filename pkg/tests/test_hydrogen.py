import itertools
import math

import numpy as np
import pytest

import oracle
from mixedgp import hydrogen as hyd
from mixedgp import matkernel as mk
from mixedgp.exceptions import DegenerateParameters
from mixedgp.quantum import evolve, mixedness

GRID = list(itertools.product([0.5, 1.0, 2.0], [0.5, 1.0, 3.0], [0.5, 1.0, 4.0]))


def test_hyperfine_matrix_layout():
    np.testing.assert_allclose(hyd.hyperfine_hamiltonian(0.0), np.zeros((4, 4)))
    H0, _ = oracle.hamiltonian(1.0, 0.0)
    np.testing.assert_allclose(hyd.hyperfine_hamiltonian(1.0), H0, atol=1e-15)


@pytest.mark.parametrize("J", [0.5, 1.0, 2.0])
def test_hyperfine_spectrum(J):
    spec = mk.hermitian_eig(hyd.hyperfine_hamiltonian(J))
    np.testing.assert_allclose(spec.eigenvalues, [-0.75 * J] + [0.25 * J] * 3, atol=1e-10)
    assert spec.multiplicities() == (1, 3)


@pytest.mark.parametrize("J", [0.5, 1.0, -2.0])
def test_canonical_vectors_are_eigenvectors(J):
    H0 = hyd.hyperfine_hamiltonian(J)
    phi = hyd.canonical_eigenbasis()
    for i in range(3):
        assert mk.frobenius(H0 @ phi[:, i] - 0.25 * J * phi[:, i]) <= 1e-14
    assert mk.frobenius(H0 @ phi[:, 3] + 0.75 * J * phi[:, 3]) <= 1e-14


def test_canonical_basis_orthonormal_and_complete():
    phi = hyd.canonical_eigenbasis()
    assert mk.frobenius(mk.dagger(phi) @ phi - np.eye(4)) <= 1e-12
    P_trip, P_sing = hyd.canonical_projectors()
    assert mk.frobenius(P_trip + P_sing - np.eye(4)) <= 1e-12
    for ket, col in zip(oracle.KETS, phi.T):
        np.testing.assert_allclose(col, ket)


def test_zeeman_term():
    np.testing.assert_allclose(hyd.zeeman_term(0.0, 0.0), np.zeros((4, 4)))
    np.testing.assert_allclose(hyd.zeeman_term(1.0), np.diag([0.5, -0.5, 0.5, -0.5]))
    _, H = oracle.hamiltonian(0.0, 0.7, 0.3)
    np.testing.assert_allclose(hyd.zeeman_term(0.7, 0.3), H, atol=1e-15)
    assert mk.frobenius(mk.commutator(hyd.hyperfine_hamiltonian(1.0), hyd.zeeman_term(1.0))) > 0.1


@pytest.mark.parametrize("C", [0.5, 1.0, 3.0])
def test_field_reversal_spectrum(C):
    H0 = hyd.hyperfine_hamiltonian(1.0)
    a = np.linalg.eigvalsh(H0 + hyd.zeeman_term(C))
    b = np.linalg.eigvalsh(H0 + hyd.zeeman_term(-C))
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_period():
    assert hyd.period(hyd.ModelParams(J=1.0, C=0.0, T=1.0)) == pytest.approx(2 * math.pi)
    assert hyd.period(hyd.ModelParams(J=1.0, C=1.0, T=1.0)) == pytest.approx(4.442882938158366, abs=1e-12)
    assert hyd.period(hyd.ModelParams(J=1.0, C=1.0, T=1.0, n=3)) == pytest.approx(3 * 4.442882938158366)
    with pytest.raises(DegenerateParameters):
        hyd.period(hyd.ModelParams(J=0.0, C=0.0, T=1.0))


def test_model_params_validation():
    with pytest.raises(ValueError):
        hyd.ModelParams(J=1.0, C=1.0, T=0.0)
    with pytest.raises(ValueError):
        hyd.ModelParams(J=1.0, C=1.0, T=1.0, n=0)
    with pytest.raises(ValueError):
        hyd.ModelParams(J=float("nan"), C=1.0, T=1.0)


@pytest.mark.parametrize("J,C,T", GRID)
@pytest.mark.parametrize("n", [1, 2])
def test_recurrence(J, C, T, n):
    params = hyd.ModelParams(J=J, C=C, T=T, n=n)
    rho0 = hyd.initial_state(params)
    rho_tau = evolve(rho0, hyd.total_hamiltonian(params), hyd.period(params))
    assert mk.frobenius(rho_tau.matrix - rho0.matrix) <= 1e-8


def test_initial_state_diagonal_in_canonical_basis():
    phi = hyd.canonical_eigenbasis()
    for J, T in [(1.0, 1.0), (0.5, 0.25), (2.0, 10.0)]:
        rho = hyd.initial_state(hyd.ModelParams(J=J, C=0.0, T=T)).matrix
        M = mk.dagger(phi) @ rho @ phi
        assert np.max(np.abs(M - np.diag(np.diag(M)))) <= 1e-10


def test_mixedness_closed_form_values():
    assert hyd.mixedness_closed_form(1.0, 1.0) == pytest.approx(6 * (1 + math.e) / (3 + math.e) ** 2, abs=1e-15)
    assert hyd.mixedness_closed_form(1.0, 1e9) == pytest.approx(0.75, abs=1e-8)
    # J/T = 1000: e^{J/T} overflows a double, the asymptote 6 e^{-J/T} underflows to ~0
    assert hyd.mixedness_closed_form(1000.0, 1.0) == pytest.approx(6 * math.exp(-1000.0), abs=1e-300)
    assert hyd.mixedness_closed_form(701.0, 1.0) == pytest.approx(6 * math.exp(-701.0), rel=1e-12)
    assert hyd.mixedness_closed_form(-50.0, 1.0) == pytest.approx(2 / 3, abs=1e-15)
    with pytest.raises(ValueError):
        hyd.mixedness_closed_form(1.0, 0.0)


@pytest.mark.parametrize("J", [0.5, 1.0, 2.0, -1.0])
@pytest.mark.parametrize("T", [0.25, 0.5, 1.0, 2.0, 5.0, 10.0])
def test_mixedness_numerical_vs_closed(J, T):
    numerical = mixedness(hyd.initial_state(hyd.ModelParams(J=J, C=0.0, T=T)))
    assert abs(numerical - hyd.mixedness_closed_form(J, T)) <= 1e-10


def test_mixedness_constant_in_time():
    params = hyd.ModelParams(J=1.0, C=2.0, T=0.7)
    rho0 = hyd.initial_state(params)
    H = hyd.total_hamiltonian(params)
    for t in np.linspace(0, 5, 7):
        assert abs(mixedness(evolve(rho0, H, t)) - mixedness(rho0)) <= 1e-10


def test_geometric_phase_orders():
    p = hyd.ModelParams(J=1.0, C=2.0, T=0.5)
    g1 = hyd.geometric_phase(p)
    g2 = hyd.geometric_phase(p, (1, 2))
    z1, _ = oracle.phase(1.0, 2.0, 0.5, indices=(1,))
    z2, _ = oracle.phase(1.0, 2.0, 0.5)
    assert abs(g1.factor - z1) <= 1e-10
    assert abs(g2.factor - z2) <= 1e-10


def test_geometric_phase_with_nuclear_zeeman_is_finite():
    # D != 0 breaks exact recurrence but the phase remains well defined
    g = hyd.geometric_phase(hyd.ModelParams(J=1.0, C=2.0, T=1.0, D=0.001))
    assert abs(abs(g.factor) - 1) <= 1e-12
