"""Polynomial solutions of the reflection difference system."""

import numpy as np
import pytest

from heckespin.koornwinder import compute_P, noumi_T_apply
from heckespin.numerics import (
    LaurentPoly,
    RefusalError,
    l1_ball,
    sample_generic,
)
from heckespin.qkz import (
    KZSolution,
    build_polynomial_solution,
    check_mcondition,
    cm_alpha,
    verify_solution,
)
from heckespin.spinrep import principal_series_basis
from heckespin.weyl import reduced_word, w0_coset_element


def constrained(seed, n, m):
    return sample_generic(seed=seed, n=n, constraints={"mcondition": m})


def test_mcondition_report_fields():
    p = constrained(3, 2, 1)
    rep = check_mcondition(p, 1)
    assert rep.satisfied and rep.m == 1
    assert abs(rep.lhs - rep.rhs) < 1e-9 * abs(rep.lhs)
    d = rep.to_dict()
    assert set(d) == {"m", "lhs", "rhs", "satisfied"}
    free = sample_generic(seed=3, n=2)
    assert not check_mcondition(free, 1).satisfied


@pytest.mark.parametrize("m", [-1, 0, 1])
def test_built_solution_satisfies_all_equations(m):
    p = constrained(11, 2, m)
    sol = build_polynomial_solution(p, m)
    res = verify_solution(sol, samples=8, seed=2)
    assert len(res) == 2 + 3  # n transport + (n+1) invariance families
    assert max(res.values()) < 1e-9, res


def test_unconstrained_parameters_are_refused():
    free = sample_generic(seed=21, n=2)
    with pytest.raises(RefusalError) as exc:
        build_polynomial_solution(free, 1)
    assert exc.value.report.satisfied is False


def test_distorted_solution_fails_verification():
    p = constrained(11, 2, 1)
    sol = build_polynomial_solution(p, 1)
    bad = KZSolution(
        params=p,
        components=[c.scale(1.0) for c in sol.components],
        metadata=dict(sol.metadata),
    )
    bad.components[2] = bad.components[2].scale(1.01)
    assert max(verify_solution(bad, samples=5, seed=2).values()) > 1e-3


def test_cm_alpha_is_linear():
    p = constrained(11, 2, 1)
    phi1 = LaurentPoly.monomial(2, (1, 0))
    phi2 = LaurentPoly.monomial(2, (0, -1))
    a, b = 0.7 - 0.2j, 1.3 + 0.5j
    s1 = cm_alpha(phi1, p)
    s2 = cm_alpha(phi2, p)
    s12 = cm_alpha(phi1.scale(a) + phi2.scale(b), p)
    rng = np.random.default_rng(0)
    for _ in range(4):
        t = tuple(
            complex(rng.uniform(0.8, 1.2) * np.exp(2j * np.pi * rng.uniform()))
            for _ in range(2)
        )
        lhs = s12.eval_at(t)
        rhs = a * s1.eval_at(t) + b * s2.eval_at(t)
        assert np.abs(lhs - rhs).max() < 1e-12 * max(np.abs(lhs).max(), 1.0)


def test_two_paths_through_the_hecke_action_agree():
    """Letterwise application versus cached operator matrices on a span."""
    p = constrained(11, 2, 1)
    n = 2
    radius = 6
    basis = [tuple(mu) for mu in l1_ball(n, radius)]
    index = {mu: k for k, mu in enumerate(basis)}
    mats = {}
    for j in range(n + 1):
        cols = np.zeros((len(basis), len(basis)), dtype=complex)
        for k, mu in enumerate(basis):
            img = noumi_T_apply(j, LaurentPoly.monomial(n, mu), p)
            for exp, c in img.terms.items():
                if exp not in index:
                    if abs(c) > 1e-12:
                        pytest.skip("span too small for this parameter draw")
                    continue
                cols[index[exp], k] += c
        mats[j] = cols
    phi = LaurentPoly.monomial(n, (1, 0))
    vec0 = np.zeros(len(basis), dtype=complex)
    vec0[index[(1, 0)]] = 1.0
    B, _zeta, reps, _rep = principal_series_basis(p)
    w0j_inv = w0_coset_element(range(1, n), n).inverse_finite()
    matrix_components = [np.zeros(len(basis), dtype=complex) for _ in range(2**n)]
    for col, w in enumerate(reps):
        vec = vec0
        for a in reversed(reduced_word(w * w0j_inv)):
            vec = mats[a] @ vec
        for bidx in range(2**n):
            matrix_components[bidx] = matrix_components[bidx] + B[bidx, col] * vec
    sol = cm_alpha(phi, p)
    for bidx in range(2**n):
        direct = np.zeros(len(basis), dtype=complex)
        for exp, c in sol.components[bidx].terms.items():
            assert exp in index
            direct[index[exp]] = c
        assert np.abs(direct - matrix_components[bidx]).max() < 1e-10


def test_solution_serialization_roundtrip(tmp_path):
    import json

    p = constrained(7, 2, 0)
    sol = build_polynomial_solution(p, 0)
    path = tmp_path / "sol.json"
    path.write_text(json.dumps(sol.to_dict()))
    back = KZSolution.from_dict(json.loads(path.read_text()))
    t = (0.9 + 0.1j, 1.1 - 0.3j)
    assert np.abs(sol.eval_at(t) - back.eval_at(t)).max() < 1e-14
    assert back.metadata == sol.metadata


def test_builder_metadata_records_the_construction():
    p = constrained(11, 2, 1)
    sol = build_polynomial_solution(p, 1)
    assert sol.metadata["m"] == 1
    assert sol.metadata["lambda"] == [1, 1]
    assert "construction" in sol.metadata


def test_constant_label_solution_is_built_from_the_constant():
    p = constrained(7, 2, 0)
    assert compute_P((0, 0), p).terms == {(0, 0): 1.0}
    sol = build_polynomial_solution(p, 0)
    assert sol.max_coeff() > 1e-6
