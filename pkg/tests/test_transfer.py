"""Double-row transfer matrices and the open-chain Hamiltonian."""

import numpy as np
import pytest

from heckespin.numerics import rel_residual, sample_generic
from heckespin.spinrep import build_spin_rep
from heckespin.transfer import (
    check_transfer,
    check_transfer_vs_transport,
    hamiltonian,
    monodromy_U,
    theta_matrix,
    tl_weight,
    transfer_T,
    transfer_T_mp,
)


def test_transfer_identity_battery(params2):
    res = check_transfer(params2, samples=6, seed=2)
    assert max(res.values()) < 1e-9, res


def test_transfer_identity_battery_n3(params3):
    res = check_transfer(params3, samples=4, seed=2)
    assert max(res.values()) < 1e-9, res


def test_monodromy_forms_agree(params3, rng):
    x = complex(0.9 * np.exp(0.4j))
    t = tuple(
        complex(rng.uniform(0.8, 1.2) * np.exp(2j * np.pi * rng.uniform()))
        for _ in range(3)
    )
    a = monodromy_U(params3, x, t, form="rcheck")
    b = monodromy_U(params3, x, t, form="r")
    assert rel_residual(a, b) < 1e-11


def test_commuting_transfer_matrices(params3, rng):
    t = tuple(
        complex(rng.uniform(0.8, 1.2) * np.exp(2j * np.pi * rng.uniform()))
        for _ in range(3)
    )
    x = complex(0.85 * np.exp(0.3j))
    y = complex(1.15 * np.exp(-0.7j))
    a = transfer_T(params3, x, t)
    b = transfer_T(params3, y, t)
    assert rel_residual(a @ b, b @ a) < 1e-10


def test_transfer_interpolates_the_transport(params2):
    res = check_transfer_vs_transport(params2, samples=5, seed=3)
    assert max(res.values()) < 1e-9, res


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_hamiltonian_forms_agree(seed):
    p = sample_generic(seed=seed, n=2)
    h_tl = hamiltonian(p, form="tl")
    h_pauli = hamiltonian(p, form="pauli")
    h_transfer = hamiltonian(p, form="transfer")
    assert rel_residual(h_tl, h_pauli) < 1e-10
    assert rel_residual(h_transfer, h_pauli) < 1e-8


def test_hamiltonian_is_a_projector_combination(params2):
    p = params2
    rep = build_spin_rep(p)
    direct = (
        tl_weight(p, 0) * rep.e[0]
        + tl_weight(p, 1) * rep.e[1]
        + tl_weight(p, 2) * rep.e[2]
    )
    assert rel_residual(hamiltonian(p, form="tl"), direct) < 1e-12
    assert tl_weight(p, 1) == 1.0


def test_theta_is_diagonal_in_kappa(params2):
    th = theta_matrix(params2)
    k = params2.kappa
    assert np.allclose(np.diag(th), [k ** -0.5, k ** 0.5])


def test_high_precision_agreement(params2, rng):
    x = complex(0.83 * np.exp(0.9j))
    t = (0.94 + 0.21j, 1.08 - 0.17j)
    lo = transfer_T(params2, x, t)
    hi = transfer_T_mp(params2, x, t, digits=40)
    assert rel_residual(lo, np.array(hi, dtype=complex)) < 1e-12


def test_detuned_boundary_separates_forms(params2):
    bad = params2.replace(kappa0=params2.kappa0 * 1.01)
    raw = rel_residual(hamiltonian(bad, form="tl"), hamiltonian(params2, form="pauli"))
    assert raw > 1e-3
