"""Boundary matchings, the diagram action on them, and the change of basis
to the chain."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckespin.matchings import (
    Matching,
    boundary_arc_counts,
    enumerate_matchings,
    intertwiner_Psi,
    matchmaker_betas,
    matchmaker_matrix,
    pty,
)
from heckespin.numerics import sample_generic
from heckespin.spinrep import build_spin_rep, check_tl_relations, delta_from_kappa

signs = st.lists(st.sampled_from([1, -1]), min_size=1, max_size=7)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_count(n):
    # matchings biject with sign strings
    assert len(enumerate_matchings(n)) == 2**n


@given(signs)
@settings(max_examples=60, deadline=None)
def test_sign_string_roundtrip(alpha):
    n = len(alpha)
    p = Matching.from_signs(n, alpha)
    assert p.nu() == tuple(alpha)
    again = Matching.from_nu_string(n, p.nu_string())
    assert again.pairs == p.pairs


def test_noncrossing_validation_rejects_crossings():
    with pytest.raises(ValueError):
        Matching.make(2, [(1, 3), (2, 4)]).validate()


@given(signs)
@settings(max_examples=40, deadline=None)
def test_arc_count_alternating_sum(alpha):
    n = len(alpha)
    p = Matching.from_signs(n, alpha)
    s = sum((-1) ** h * c for (_, h), c in boundary_arc_counts(p).items())
    assert s == -pty(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matchmaker_relations(n):
    params = sample_generic(seed=1, n=n)
    tl = delta_from_kappa(params)
    b0, b1 = matchmaker_betas(params)
    mats = {j: matchmaker_matrix(j, tl, b0, b1, n) for j in range(n + 1)}
    assert max(check_tl_relations(mats, tl, n).values()) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4])
def test_intertwiner_commutes_and_is_invertible(n):
    params = sample_generic(seed=1, n=n)
    tl = delta_from_kappa(params)
    b0, b1 = matchmaker_betas(params)
    rep = build_spin_rep(params)
    psi = intertwiner_Psi(params)
    for j in range(n + 1):
        lhs = rep.e[j] @ psi
        rhs = psi @ matchmaker_matrix(j, tl, b0, b1, n)
        scale = max(np.abs(lhs).max(), 1.0)
        assert np.abs(lhs - rhs).max() / scale < 1e-10
    assert abs(np.linalg.det(psi)) > 1e-8


def test_degenerate_limit_is_the_sign_relabeling(params3):
    limit_map = intertwiner_Psi(params3, limit=True)
    basis = enumerate_matchings(params3.n)
    expected = np.zeros_like(limit_map)
    for col, p in enumerate(basis):
        expected[p.nu_index(), col] = 1.0
    assert np.array_equal(limit_map, expected)


def test_drop_sites_removes_touching_pairs():
    p = Matching.from_signs(3, [1, -1, 1])
    surviving = p.drop_sites(2)
    assert all(2 not in pair for pair in surviving)
    assert len(surviving) < len(p.pairs)
